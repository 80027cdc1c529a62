#include "cellscope/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cellscope/csv.hpp"
#include "cellscope/errors.hpp"
#include "cellscope/parallel.hpp"

namespace cellscope {

std::vector<CorpusEntry> load_corpus(std::istream& in) {
  std::string first;
  if (!std::getline(in, first)) throw DataError("empty corpus");
  std::vector<CorpusEntry> out;
  if (first == "genotype,accuracy" || first == "genotype") {
    bool with_acc = first != "genotype";
    CsvReader reader(in);
    while (auto row = reader.next()) {
      if (row->fields.size() == 1 && row->fields[0].empty()) continue;
      if (row->fields.size() != (with_acc ? 2u : 1u)) {
        throw DataError("corpus line " + std::to_string(row->line + 1) +
                        ": wrong field count");
      }
      CorpusEntry e;
      e.genotype = row->fields[0];
      if (with_acc) {
        try {
          e.accuracy = std::stod(row->fields[1]);
        } catch (const std::exception&) {
          throw DataError("corpus line " + std::to_string(row->line + 1) +
                          ": malformed accuracy");
        }
      }
      out.push_back(std::move(e));
    }
  } else {
    std::string line = first;
    do {
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
      if (!line.empty()) out.push_back({line, std::nullopt});
    } while (std::getline(in, line));
  }
  if (out.empty()) throw DataError("empty corpus");
  return out;
}

namespace {

SpaceSpec spec_for(SpaceKind kind) {
  return kind == SpaceKind::darts ? SpaceSpec::darts() : SpaceSpec::nb201();
}

nlohmann::json record_json(const OIRecord& r) {
  return {{"arch_id", r.arch_id},
          {"cell", std::string(to_string(r.address.cell))},
          {"dst", r.address.dst},
          {"slot", r.address.slot},
          {"primitive", std::string(label(r.primitive))},
          {"oi", r.oi},
          {"neighbors", r.neighbor_count},
          {"important", r.important}};
}

}  // namespace

nlohmann::json oi_records_json(const std::vector<OIRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const OIRecord& r : records) arr.push_back(record_json(r));
  return {{"schema", {{"name", "cellscope-oi"}, {"version", 1}}}, {"records", arr}};
}

std::vector<OIRecord> oi_records_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || !doc.contains("records")) {
    throw DataError("not an OI report");
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "schema" && key != "records") throw DataError("unknown report field: " + key);
  }
  const auto& schema = doc["schema"];
  if (schema.value("name", "") != "cellscope-oi" || schema.value("version", 0) != 1) {
    throw DataError("unsupported OI report schema");
  }
  std::vector<OIRecord> out;
  for (const auto& j : doc["records"]) {
    static const std::vector<std::string> known = {"arch_id", "cell",      "dst",
                                                   "slot",    "primitive", "oi",
                                                   "neighbors", "important"};
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw DataError("unknown record field: " + key);
      }
    }
    OIRecord r;
    r.arch_id = j.at("arch_id").get<std::string>();
    std::string cell = j.at("cell").get<std::string>();
    if (cell != "normal" && cell != "reduce") throw DataError("bad cell kind: " + cell);
    r.address.cell = cell == "normal" ? CellKind::normal : CellKind::reduce;
    r.address.dst = j.at("dst").get<int>();
    r.address.slot = j.at("slot").get<int>();
    auto p = primitive_from_label(j.at("primitive").get<std::string>());
    if (!p) throw DataError("bad primitive label in record");
    r.primitive = *p;
    r.oi = j.at("oi").get<double>();
    r.neighbor_count = j.at("neighbors").get<int>();
    r.important = j.at("important").get<bool>();
    out.push_back(std::move(r));
  }
  return out;
}

std::string aggregate_csv(const std::vector<OIGroupSummary>& groups) {
  std::ostringstream os;
  os << "primitive,cell,count,mean,q25,median,q75,fraction_important\n";
  for (const OIGroupSummary& g : groups) {
    os << label(g.primitive) << ',' << to_string(g.cell) << ',' << g.count << ',' << g.mean
       << ',' << g.q25 << ',' << g.median << ',' << g.q75 << ',' << g.fraction_important
       << '\n';
  }
  return os.str();
}

nlohmann::json motif_table_json(const std::vector<SupportStats>& stats) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SupportStats& s : stats) {
    arr.push_back({{"code", s.pattern.code},
                   {"nodes", s.pattern.node_count()},
                   {"edges", s.pattern.edge_count()},
                   {"count_target", s.count_target},
                   {"count_ref", s.count_ref},
                   {"support_target", s.support_target},
                   {"support_ref", s.support_ref},
                   {"ratio", s.ratio},
                   {"rendering", render_pattern(s.pattern)}});
  }
  return arr;
}

nlohmann::json run_pipeline(const RunConfig& config, const std::vector<CorpusEntry>& corpus) {
  if (corpus.empty()) throw DataError("empty corpus");
  SpaceSpec spec = spec_for(config.space);

  std::vector<Architecture> archs;
  archs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      archs.push_back(parse_genotype(corpus[i].genotype, spec));
    } catch (const ParseError& e) {
      throw DataError("corpus entry " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  std::unique_ptr<Evaluator> evaluator = make_evaluator(config.surrogate, spec);

  // Selection accuracies: the corpus-provided values when present
  // (all-or-nothing), otherwise surrogate evaluations.
  std::size_t with_acc = 0;
  for (const CorpusEntry& e : corpus) {
    if (e.accuracy) ++with_acc;
  }
  if (with_acc != 0 && with_acc != corpus.size()) {
    throw DataError("corpus mixes entries with and without accuracies");
  }
  std::vector<double> acc(corpus.size());
  if (with_acc == corpus.size()) {
    for (std::size_t i = 0; i < corpus.size(); ++i) acc[i] = *corpus[i].accuracy;
  } else {
    parallel_for(corpus.size(), config.parallelism,
                 [&](std::size_t i) { acc[i] = evaluator->evaluate(archs[i]); });
  }

  std::size_t count = static_cast<std::size_t>(std::llround(
      config.top_fraction * static_cast<double>(corpus.size())));
  count = std::clamp<std::size_t>(count, 1, corpus.size());
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return config.tail == Tail::top ? acc[a] > acc[b] : acc[a] < acc[b];
  });
  order.resize(count);

  // OI records for the selected architectures, in selection order.
  std::vector<std::vector<OIRecord>> per_arch(count);
  parallel_for(count, config.parallelism, [&](std::size_t k) {
    per_arch[k] = compute_oi(archs[order[k]], *evaluator, config.threshold);
  });
  std::vector<OIRecord> records;
  for (const auto& rs : per_arch) records.insert(records.end(), rs.begin(), rs.end());

  std::vector<OIGroupSummary> aggregate = aggregate_oi(records, spec);

  // Residual-link prevalence across the selection (normal cells).
  std::size_t residual = 0, via0 = 0, via1 = 0;
  if (spec.kind == SpaceKind::darts) {
    for (std::size_t k = 0; k < count; ++k) {
      ResidualReport r = has_residual_link(archs[order[k]].normal);
      residual += r.present;
      via0 += r.via_in0;
      via1 += r.via_in1;
    }
  }

  // Motifs: important subgraphs as the target corpus, per-graph random
  // same-size edge subsets of the full cells as the null reference.
  std::vector<LabeledDag> target;
  std::vector<LabeledDag> reference;
  auto add_cell_graphs = [&](CellKind kind, std::uint64_t stream_base) {
    for (std::size_t k = 0; k < count; ++k) {
      LabeledDag important =
          important_subgraph(archs[order[k]], per_arch[k], config.threshold, spec, kind);
      LabeledDag full = to_dag(archs[order[k]].cell(kind), spec);
      Rng rng(config.seed, stream_base + k);
      std::vector<LabeledDag> refs =
          null_reference(full, important.op_edge_count(), rng, config.reference_reps);
      target.push_back(std::move(important));
      for (LabeledDag& r : refs) reference.push_back(std::move(r));
    }
  };
  add_cell_graphs(CellKind::normal, 1ull << 32);
  if (config.include_reduce && spec.kind == SpaceKind::darts) {
    add_cell_graphs(CellKind::reduce, 2ull << 32);
  }

  std::vector<MinedPattern> mined = mine_frequent(target, config.min_support, config.max_edges);
  std::vector<SupportStats> ranked =
      ratio_rank(mined, static_cast<long long>(target.size()), reference);

  nlohmann::json selection = nlohmann::json::array();
  for (std::size_t k = 0; k < count; ++k) {
    selection.push_back({{"genotype", serialize_genotype(archs[order[k]], spec)},
                         {"accuracy", acc[order[k]]}});
  }
  nlohmann::json record_arr = nlohmann::json::array();
  for (const OIRecord& r : records) record_arr.push_back(record_json(r));
  nlohmann::json aggregate_arr = nlohmann::json::array();
  for (const OIGroupSummary& g : aggregate) {
    aggregate_arr.push_back({{"primitive", std::string(label(g.primitive))},
                             {"cell", std::string(to_string(g.cell))},
                             {"count", g.count},
                             {"mean", g.mean},
                             {"q25", g.q25},
                             {"median", g.median},
                             {"q75", g.q75},
                             {"fraction_important", g.fraction_important}});
  }

  nlohmann::json report;
  report["schema"] = {{"name", "cellscope-report"}, {"version", 1}};
  report["config"] = {{"space", std::string(to_string(config.space))},
                      {"seed", config.seed},
                      {"threshold", config.threshold},
                      {"min_support", config.min_support},
                      {"max_edges", config.max_edges},
                      {"reference_reps", config.reference_reps},
                      {"surrogate", config.surrogate},
                      {"top_fraction", config.top_fraction},
                      {"tail", config.tail == Tail::top ? "top" : "bottom"},
                      {"include_reduce", config.include_reduce}};
  report["corpus_size"] = corpus.size();
  report["selection"] = {{"count", count}, {"architectures", selection}};
  report["oi"] = {{"records", record_arr}, {"aggregate", aggregate_arr}};
  if (spec.kind == SpaceKind::darts) {
    report["residual"] = {
        {"count", residual},
        {"fraction", static_cast<double>(residual) / static_cast<double>(count)},
        {"via_in0_fraction", static_cast<double>(via0) / static_cast<double>(count)},
        {"via_in1_fraction", static_cast<double>(via1) / static_cast<double>(count)}};
  }
  report["motifs"] = motif_table_json(ranked);
  return report;
}

}  // namespace cellscope
