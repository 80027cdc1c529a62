#include "cellscope/cli.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cellscope/costmodel.hpp"
#include "cellscope/csv.hpp"
#include "cellscope/editor.hpp"
#include "cellscope/errors.hpp"
#include "cellscope/pipeline.hpp"
#include "cellscope/sampler.hpp"
#include "cellscope/wilcoxon.hpp"

namespace cellscope {

namespace {

SpaceKind parse_space(const std::string& s) {
  if (s == "darts") return SpaceKind::darts;
  if (s == "nb201") return SpaceKind::nb201;
  throw CLI::ValidationError("--space", "expected darts or nb201");
}

SpaceSpec spec_for(SpaceKind k) {
  return k == SpaceKind::darts ? SpaceSpec::darts() : SpaceSpec::nb201();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DataError("cannot write output file: " + path);
  f << content;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<CorpusEntry> corpus_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open corpus file: " + path);
  return load_corpus(f);
}

struct CommonOiArgs {
  std::string space = "darts";
  std::string surrogate;
  std::string arch;
  std::string corpus;
  std::string out;
  double threshold = kDefaultImportanceThreshold;
};

std::vector<OIRecord> records_for(const CommonOiArgs& a) {
  SpaceSpec spec = spec_for(parse_space(a.space));
  auto evaluator = make_evaluator(a.surrogate, spec);
  std::vector<Architecture> archs;
  if (!a.arch.empty()) {
    archs.push_back(parse_genotype(a.arch, spec));
  } else if (!a.corpus.empty()) {
    for (const CorpusEntry& e : corpus_from_file(a.corpus)) {
      archs.push_back(parse_genotype(e.genotype, spec));
    }
  } else {
    throw DataError("oi compute needs --arch or --corpus");
  }
  std::vector<OIRecord> records;
  for (const Architecture& arch : archs) {
    std::vector<OIRecord> rs = compute_oi(arch, *evaluator, a.threshold);
    records.insert(records.end(), rs.begin(), rs.end());
  }
  return records;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cell search-space inspector"};
  app.require_subcommand(1);

  auto env = [](const std::string& flag) {
    std::string name = "CELLSCOPE_";
    for (char c : flag) name += c == '-' ? '_' : static_cast<char>(std::toupper(c));
    return name;
  };
  auto opt = [&](CLI::App* cmd, const std::string& flag, auto& var, const std::string& desc) {
    return cmd->add_option("--" + flag, var, desc)->envname(env(flag));
  };

  // ---- space stats ----
  auto* space_cmd = app.add_subcommand("space", "search-space facts");
  auto* stats_cmd = space_cmd->add_subcommand("stats", "cardinality and constraint summary");
  std::string stats_space = "darts";
  opt(stats_cmd, "space", stats_space, "darts or nb201");
  stats_cmd->callback([&] {
    SpaceSpec spec = spec_for(parse_space(stats_space));
    Cardinality card = space_cardinality(spec);
    out << "space: " << to_string(spec.kind) << "\n";
    out << "primitives (" << spec.num_primitives() << "):";
    for (Primitive p : spec.primitives) out << ' ' << label(p);
    out << "\n";
    if (spec.kind == SpaceKind::darts) {
      out << "wiring: " << spec.intermediate_nodes << " intermediate nodes, exactly "
          << spec.in_edges_per_node << " in-edges from distinct predecessors each\n";
    } else {
      out << "wiring: " << spec.nodes() << " nodes, one operation per ordered pair\n";
    }
    out << "cells: " << u128_to_string(card.cells) << "\n";
    out << "architectures: " << u128_to_string(card.architectures) << "\n";
  });

  // ---- sample ----
  auto* sample_cmd = app.add_subcommand("sample", "constrained random architectures");
  std::string sm_space = "darts", sm_group = "random", sm_out;
  int sm_n = 1;
  std::uint64_t sm_seed = 0;
  double sm_p = -1.0;
  bool sm_pool = false, sm_json = false;
  opt(sample_cmd, "space", sm_space, "darts or nb201");
  opt(sample_cmd, "group", sm_group, "random | skip | prim | primskip");
  sample_cmd->add_option("-n,--n", sm_n, "sample count")->envname(env("n"));
  opt(sample_cmd, "seed", sm_seed, "generator seed")->required();
  opt(sample_cmd, "p", sm_p, "parameterless probability (with prim)");
  opt(sample_cmd, "pool-allowed", sm_pool, "pools join the parameterless choices");
  opt(sample_cmd, "json", sm_json, "emit a JSON array with attestations");
  opt(sample_cmd, "out", sm_out, "output file (default stdout)");
  sample_cmd->callback([&] {
    SpaceSpec spec = spec_for(parse_space(sm_space));
    SampleGroup group;
    if (sm_group == "random") group = SampleGroup::random;
    else if (sm_group == "skip") group = SampleGroup::skip;
    else if (sm_group == "prim") group = SampleGroup::prim;
    else if (sm_group == "primskip") group = SampleGroup::primskip;
    else throw DataError("unknown group: " + sm_group);
    ConstraintSet c = constraints_for(group);
    if (sm_p >= 0.0) c.p = sm_p;
    c.pool_allowed = sm_pool;
    Rng rng(sm_seed);
    std::ostringstream os;
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < sm_n; ++i) {
      Architecture a = sample(spec, c, rng);
      std::string geno = serialize_genotype(a, spec);
      if (sm_json) {
        nlohmann::json j = {{"genotype", geno},
                            {"valid", validate(a, spec).ok()}};
        if (spec.kind == SpaceKind::darts) {
          j["residual"] = has_residual_link(a.normal).present;
        }
        if (c.prim) {
          bool ok = true;
          auto check = [&](const Cell& cell) {
            for (const Edge& e : cell.edges()) {
              bool fixed_skip = e.op == Primitive::skip_connect;
              bool pool_ok = c.pool_allowed && is_pool(e.op);
              bool conv_ok = spec.kind == SpaceKind::darts
                                 ? is_sep_conv(e.op)
                                 : (e.op == Primitive::nor_conv_1x1 ||
                                    e.op == Primitive::nor_conv_3x3);
              if (!fixed_skip && !pool_ok && !conv_ok) ok = false;
            }
          };
          check(a.normal);
          if (a.reduce) check(*a.reduce);
          j["primitive_pool"] = ok;
        }
        arr.push_back(j);
      } else {
        os << geno << "\n";
      }
    }
    if (sm_json) os << arr.dump(2) << "\n";
    write_output(sm_out, os.str(), out);
  });

  // ---- oi compute / aggregate ----
  auto* oi_cmd = app.add_subcommand("oi", "operation importance");
  auto* oi_compute = oi_cmd->add_subcommand("compute", "OI records for architectures");
  CommonOiArgs oi_args;
  opt(oi_compute, "space", oi_args.space, "darts or nb201");
  opt(oi_compute, "surrogate", oi_args.surrogate,
      "synthetic | tabular:<csv> | http://host:port")->required();
  opt(oi_compute, "arch", oi_args.arch, "genotype text");
  opt(oi_compute, "corpus", oi_args.corpus, "corpus file");
  opt(oi_compute, "threshold", oi_args.threshold, "importance threshold");
  opt(oi_compute, "out", oi_args.out, "output file (default stdout)");
  oi_compute->callback([&] {
    nlohmann::json doc = oi_records_json(records_for(oi_args));
    write_output(oi_args.out, doc.dump(2) + "\n", out);
  });

  auto* oi_aggregate = oi_cmd->add_subcommand("aggregate", "per-(primitive, cell) summaries");
  std::string agg_records, agg_space = "darts", agg_out;
  opt(oi_aggregate, "records", agg_records, "OI report JSON")->required();
  opt(oi_aggregate, "space", agg_space, "darts or nb201");
  opt(oi_aggregate, "out", agg_out, "output CSV (default stdout)");
  oi_aggregate->callback([&] {
    nlohmann::json doc = nlohmann::json::parse(slurp(agg_records), nullptr, false);
    if (doc.is_discarded()) throw DataError("malformed JSON: " + agg_records);
    std::vector<OIRecord> records = oi_records_from_json(doc);
    auto groups = aggregate_oi(records, spec_for(parse_space(agg_space)));
    write_output(agg_out, aggregate_csv(groups), out);
  });

  // ---- motifs mine ----
  auto* motifs_cmd = app.add_subcommand("motifs", "frequent subgraph analysis");
  auto* mine_cmd = motifs_cmd->add_subcommand(
      "mine", "important subgraphs -> null reference -> mine -> ratio-rank");
  std::string mn_space = "darts", mn_surrogate, mn_corpus, mn_out;
  std::uint64_t mn_seed = 0;
  double mn_threshold = kDefaultImportanceThreshold, mn_support = 0.05;
  int mn_max_edges = 5, mn_reps = 1;
  bool mn_include_reduce = false;
  opt(mine_cmd, "space", mn_space, "darts or nb201");
  opt(mine_cmd, "surrogate", mn_surrogate, "surrogate descriptor")->required();
  opt(mine_cmd, "corpus", mn_corpus, "corpus file")->required();
  opt(mine_cmd, "seed", mn_seed, "generator seed")->required();
  opt(mine_cmd, "threshold", mn_threshold, "importance threshold");
  opt(mine_cmd, "min-support", mn_support, "minimum support");
  opt(mine_cmd, "max-edges", mn_max_edges, "pattern size cap");
  opt(mine_cmd, "reps", mn_reps, "null-reference repetitions per graph");
  opt(mine_cmd, "include-reduce", mn_include_reduce, "also mine reduce cells");
  opt(mine_cmd, "out", mn_out, "output file (default stdout)");
  mine_cmd->callback([&] {
    RunConfig cfg;
    cfg.space = parse_space(mn_space);
    cfg.surrogate = mn_surrogate;
    cfg.seed = mn_seed;
    cfg.threshold = mn_threshold;
    cfg.min_support = mn_support;
    cfg.max_edges = mn_max_edges;
    cfg.reference_reps = mn_reps;
    cfg.include_reduce = mn_include_reduce;
    cfg.top_fraction = 1.0;  // the whole given corpus is the target
    nlohmann::json report = run_pipeline(cfg, corpus_from_file(mn_corpus));
    nlohmann::json doc = {{"schema", {{"name", "cellscope-motifs"}, {"version", 1}}},
                          {"motifs", report["motifs"]}};
    write_output(mn_out, doc.dump(2) + "\n", out);
  });

  // ---- edit ----
  auto* edit_cmd = app.add_subcommand("edit", "minimal edit to residual + separable compliance");
  std::string ed_arch, ed_report;
  std::uint64_t ed_seed = 0;
  bool ed_uniform = false;
  opt(edit_cmd, "arch", ed_arch, "genotype text")->required();
  opt(edit_cmd, "seed", ed_seed, "generator seed")->required();
  opt(edit_cmd, "uniform-replacement", ed_uniform,
      "draw replacements uniformly instead of kernel-size matching");
  opt(edit_cmd, "report", ed_report, "also write a JSON edit report here");
  edit_cmd->callback([&] {
    SpaceSpec spec = SpaceSpec::darts();
    Architecture arch = parse_genotype(ed_arch, spec);
    Rng rng(ed_seed);
    EditReport rep = edit_to_compliance(arch, rng, EditOptions{!ed_uniform});
    out << serialize_genotype(rep.edited, spec) << "\n";
    if (!ed_report.empty()) {
      nlohmann::json edits = nlohmann::json::array();
      for (const EditEntry& e : rep.edits) {
        edits.push_back({{"cell", std::string(to_string(e.address.cell))},
                         {"dst", e.address.dst},
                         {"slot", e.address.slot},
                         {"old", std::string(label(e.old_op))},
                         {"new", std::string(label(e.new_op))},
                         {"reason", e.reason}});
      }
      nlohmann::json doc = {{"schema", {{"name", "cellscope-edit"}, {"version", 1}}},
                            {"edited", serialize_genotype(rep.edited, spec)},
                            {"distance", rep.distance},
                            {"edits", edits}};
      write_output(ed_report, doc.dump(2) + "\n", out);
    }
  });

  // ---- cost ----
  auto* cost_cmd = app.add_subcommand("cost", "analytic parameter and MAC accounting");
  std::string co_arch, co_preset = "cifar-eval";
  bool co_aux = false;
  opt(cost_cmd, "arch", co_arch, "genotype text")->required();
  opt(cost_cmd, "preset", co_preset, "cifar-eval | cifar-proxy | imagenet");
  opt(cost_cmd, "include-auxiliary", co_aux, "count the auxiliary tower");
  cost_cmd->callback([&] {
    NetworkConfig cfg;
    if (co_preset == "cifar-eval") cfg = NetworkConfig::cifar_eval();
    else if (co_preset == "cifar-proxy") cfg = NetworkConfig::cifar_proxy();
    else if (co_preset == "imagenet") cfg = NetworkConfig::imagenet();
    else throw DataError("unknown preset: " + co_preset);
    cfg.include_auxiliary = co_aux;
    Architecture arch = parse_genotype(co_arch, SpaceSpec::darts());
    nlohmann::json doc = {{"params", count_params(arch, cfg)},
                          {"macs", count_flops(arch, cfg)}};
    out << doc.dump() << "\n";
  });

  // ---- pareto ----
  auto* pareto_cmd = app.add_subcommand("pareto", "non-dominated accuracy/cost subset");
  std::string pa_points, pa_cost = "params", pa_out;
  opt(pareto_cmd, "points", pa_points, "CSV of id,accuracy,params,flops")->required();
  opt(pareto_cmd, "cost", pa_cost, "params or flops");
  opt(pareto_cmd, "out", pa_out, "output CSV (default stdout)");
  pareto_cmd->callback([&] {
    std::ifstream f(pa_points);
    if (!f) throw DataError("cannot open points file: " + pa_points);
    CsvReader reader(f);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"id", "accuracy", "params", "flops"}) {
      throw DataError("expected header 'id,accuracy,params,flops'");
    }
    std::vector<ParetoPoint> points;
    while (auto row = reader.next()) {
      if (row->fields.size() == 1 && row->fields[0].empty()) continue;
      if (row->fields.size() != 4) {
        throw DataError("line " + std::to_string(row->line) + ": wrong field count");
      }
      ParetoPoint p;
      p.id = row->fields[0];
      try {
        p.accuracy = std::stod(row->fields[1]);
        p.params = std::stod(row->fields[2]);
        p.flops = std::stod(row->fields[3]);
      } catch (const std::exception&) {
        throw DataError("line " + std::to_string(row->line) + ": malformed number");
      }
      if (!std::isfinite(p.accuracy) || !std::isfinite(p.params) || !std::isfinite(p.flops) ||
          p.params < 0 || p.flops < 0) {
        throw DataError("line " + std::to_string(row->line) + ": values must be finite and nonnegative");
      }
      points.push_back(std::move(p));
    }
    CostObjective objective;
    if (pa_cost == "params") objective = CostObjective::params;
    else if (pa_cost == "flops") objective = CostObjective::flops;
    else throw DataError("unknown cost objective: " + pa_cost);
    std::ostringstream os;
    os << "id,accuracy,params,flops\n";
    for (const ParetoPoint& p : pareto_front(points, objective)) {
      os << csv_field(p.id) << ',' << p.accuracy << ',' << p.params << ',' << p.flops << '\n';
    }
    write_output(pa_out, os.str(), out);
  });

  // ---- wilcoxon ----
  auto* wx_cmd = app.add_subcommand("wilcoxon", "signed-rank test on paired samples");
  std::string wx_pairs;
  opt(wx_cmd, "pairs", wx_pairs, "CSV of a,b pairs")->required();
  wx_cmd->callback([&] {
    std::ifstream f(wx_pairs);
    if (!f) throw DataError("cannot open pairs file: " + wx_pairs);
    CsvReader reader(f);
    auto header = reader.next();
    if (!header || header->fields != std::vector<std::string>{"a", "b"}) {
      throw DataError("expected header 'a,b'");
    }
    std::vector<std::pair<double, double>> pairs;
    while (auto row = reader.next()) {
      if (row->fields.size() == 1 && row->fields[0].empty()) continue;
      if (row->fields.size() != 2) {
        throw DataError("line " + std::to_string(row->line) + ": wrong field count");
      }
      try {
        pairs.emplace_back(std::stod(row->fields[0]), std::stod(row->fields[1]));
      } catch (const std::exception&) {
        throw DataError("line " + std::to_string(row->line) + ": malformed number");
      }
    }
    WilcoxonResult r;
    try {
      r = wilcoxon_signed_rank(pairs);
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
    nlohmann::json doc = {{"statistic", r.statistic},
                          {"p_one_sided", r.p_one_sided},
                          {"p_two_sided", r.p_two_sided},
                          {"n_effective", r.n_effective},
                          {"method", r.exact ? "exact" : "normal-approximation"}};
    out << doc.dump() << "\n";
  });

  // ---- pipeline ----
  auto* pipe_cmd = app.add_subcommand("pipeline", "full corpus analysis report");
  RunConfig pl;
  std::string pl_space = "darts", pl_corpus, pl_tail = "top", pl_out;
  opt(pipe_cmd, "space", pl_space, "darts or nb201");
  opt(pipe_cmd, "surrogate", pl.surrogate, "surrogate descriptor")->required();
  opt(pipe_cmd, "corpus", pl_corpus, "corpus file")->required();
  opt(pipe_cmd, "seed", pl.seed, "generator seed")->required();
  opt(pipe_cmd, "threshold", pl.threshold, "importance threshold");
  opt(pipe_cmd, "min-support", pl.min_support, "minimum support");
  opt(pipe_cmd, "max-edges", pl.max_edges, "pattern size cap");
  opt(pipe_cmd, "reps", pl.reference_reps, "null-reference repetitions");
  opt(pipe_cmd, "top-fraction", pl.top_fraction, "selected fraction of the corpus");
  opt(pipe_cmd, "tail", pl_tail, "top or bottom");
  opt(pipe_cmd, "include-reduce", pl.include_reduce, "also mine reduce cells");
  opt(pipe_cmd, "parallelism", pl.parallelism, "worker cap (0 = hardware)");
  opt(pipe_cmd, "out", pl_out, "output file (default stdout)");
  pipe_cmd->callback([&] {
    pl.space = parse_space(pl_space);
    if (pl_tail == "top") pl.tail = Tail::top;
    else if (pl_tail == "bottom") pl.tail = Tail::bottom;
    else throw DataError("unknown tail: " + pl_tail);
    nlohmann::json report = run_pipeline(pl, corpus_from_file(pl_corpus));
    write_output(pl_out, report.dump(2) + "\n", out);
  });

  try {
    std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 takes reversed args
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cellscope
