#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellscope/importance.hpp"
#include "cellscope/motifs.hpp"

namespace cellscope {

enum class Tail { top, bottom };

/// End-to-end analysis configuration. Every randomized stage derives
/// its stream from the single seed, so identical config and inputs
/// produce byte-identical reports.
struct RunConfig {
  SpaceKind space = SpaceKind::darts;
  std::uint64_t seed = 0;
  double threshold = kDefaultImportanceThreshold;
  double min_support = 0.05;
  int max_edges = 5;
  int reference_reps = 1;
  std::string surrogate = "synthetic";
  double top_fraction = 0.05;
  Tail tail = Tail::top;
  bool include_reduce = false;  // also mine reduce-cell subgraphs
  unsigned parallelism = 0;     // 0 = hardware concurrency
};

struct CorpusEntry {
  std::string genotype;
  std::optional<double> accuracy;
};

/// Reads either a CSV with header `genotype,accuracy` or one genotype
/// per line.
std::vector<CorpusEntry> load_corpus(std::istream& in);

/// Full analysis over a corpus: top-fraction selection, OI records and
/// aggregates, residual-link prevalence, important subgraphs, null
/// reference, frequent-pattern mining and ratio ranking, bundled into
/// one self-describing JSON report.
nlohmann::json run_pipeline(const RunConfig& config, const std::vector<CorpusEntry>& corpus);

/// OI report serialization (schema `cellscope-oi`, version 1). The
/// reader is strict: unknown fields are rejected.
nlohmann::json oi_records_json(const std::vector<OIRecord>& records);
std::vector<OIRecord> oi_records_from_json(const nlohmann::json& doc);

/// One CSV row per (primitive, cell kind) group.
std::string aggregate_csv(const std::vector<OIGroupSummary>& groups);

nlohmann::json motif_table_json(const std::vector<SupportStats>& stats);

}  // namespace cellscope
