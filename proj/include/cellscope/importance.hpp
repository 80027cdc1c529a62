#pragma once

#include <string>
#include <vector>

#include "cellscope/surrogate.hpp"

namespace cellscope {

inline constexpr double kDefaultImportanceThreshold = 0.001;

/// Address of one operation inside an architecture: destination node
/// plus in-edge slot (slots ordered by source index).
struct EdgeAddress {
  CellKind cell = CellKind::normal;
  int dst = 0;
  int slot = 0;

  friend bool operator==(const EdgeAddress&, const EdgeAddress&) = default;
  friend auto operator<=>(const EdgeAddress&, const EdgeAddress&) = default;
};

struct OIRecord {
  std::string arch_id;  // canonical genotype
  EdgeAddress address;
  Primitive primitive = Primitive::skip_connect;
  double oi = 0.0;
  int neighbor_count = 0;
  bool important = false;
};

/// All single-edge perturbations of the addressed operation: the K-1
/// primitive substitutions plus every legal source rewiring (new source
/// distinct from the current one and from the sibling edge's source,
/// and preceding the destination). NB201 edges are fixed in place, so
/// only substitutions apply there.
std::vector<Architecture> neighbors(const Architecture& arch, const EdgeAddress& addr,
                                    const SpaceSpec& spec);

/// Operation importance: mean over neighbors of y(neighbor) - y(arch).
/// Any evaluator failure aborts the record; partial means are never
/// returned.
OIRecord operation_importance(const Architecture& arch, const EdgeAddress& addr,
                              const Evaluator& ev,
                              double threshold = kDefaultImportanceThreshold);

/// Every edge address of the architecture, in storage order.
std::vector<EdgeAddress> all_addresses(const Architecture& arch, const SpaceSpec& spec);

/// OI records for every operation of the architecture.
std::vector<OIRecord> compute_oi(const Architecture& arch, const Evaluator& ev,
                                 double threshold = kDefaultImportanceThreshold);

struct OIGroupSummary {
  Primitive primitive;
  CellKind cell;
  long long count = 0;
  double mean = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double fraction_important = 0.0;
};

/// Distribution summary per (primitive, cell kind) group. Groups with
/// no records are reported with count 0. Quartiles use linear
/// interpolation on the sorted sample.
std::vector<OIGroupSummary> aggregate_oi(const std::vector<OIRecord>& records,
                                         const SpaceSpec& spec);

enum class DisableOrder { ascending, descending };

struct DisableSchedule {
  DisableOrder order;
  std::vector<std::string> genotypes;  // step k has exactly k 'zero' labels
};

/// Successively replaces operations by 'zero' in OI order (ties broken
/// by edge address) until half of the operations are disabled. Records
/// must cover every operation of the architecture.
DisableSchedule disable_schedule(const Architecture& arch, const std::vector<OIRecord>& records,
                                 DisableOrder order, const SpaceSpec& spec);

/// The four derived architectures used to probe reduce-cell relevance:
/// red<-nor, red<-skip, nor<-red, nor<-skip. Skip variants keep the
/// wiring and set every primitive to skip_connect. DARTS only.
std::vector<std::pair<std::string, Architecture>> derive_variants(const Architecture& arch);

}  // namespace cellscope
