#include "cellscope/surrogate.hpp"

#include <algorithm>
#include <fstream>

#include "cellscope/csv.hpp"
#include "cellscope/errors.hpp"
#include "cellscope/motifs.hpp"

namespace cellscope {

double Evaluator::evaluate(const Architecture& arch) const {
  auto has_zero = [](const Cell& c) {
    return std::any_of(c.edges().begin(), c.edges().end(),
                       [](const Edge& e) { return e.op == Primitive::zero; });
  };
  if (has_zero(arch.normal) || (arch.reduce && has_zero(*arch.reduce))) {
    throw EvalError(EvalError::Kind::disabled_op,
                    "architecture contains disabled operations; the evaluator "
                    "requires all operations to be enabled");
  }
  ValidationReport report = validate(arch, space());
  if (!report.ok()) {
    throw EvalError(EvalError::Kind::miss,
                    "invalid architecture: " + report.violations.front().code);
  }
  return evaluate_impl(arch);
}

void TabularSurrogate::insert(const std::string& genotype, double accuracy,
                              std::optional<double> stddev) {
  std::string key;
  try {
    key = serialize_genotype(parse_genotype(genotype, spec_), spec_);
  } catch (const ParseError& e) {
    throw DataError(std::string("bad genotype key: ") + e.what());
  }
  if (accuracy < 0.0 || accuracy > 1.0) {
    throw DataError("accuracy " + std::to_string(accuracy) + " outside [0, 1]");
  }
  if (!table_.emplace(key, accuracy).second) {
    throw DataError("duplicate genotype: " + key);
  }
  if (stddev) stddev_.emplace(key, *stddev);
}

std::optional<double> TabularSurrogate::lookup(const std::string& canonical_genotype) const {
  auto it = table_.find(canonical_genotype);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> TabularSurrogate::stddev(const std::string& canonical_genotype) const {
  auto it = stddev_.find(canonical_genotype);
  if (it == stddev_.end()) return std::nullopt;
  return it->second;
}

double TabularSurrogate::evaluate_impl(const Architecture& arch) const {
  std::string key = serialize_genotype(arch, spec_);
  auto it = table_.find(key);
  if (it == table_.end()) {
    throw EvalError(EvalError::Kind::miss, "genotype not in table: " + key);
  }
  return it->second;
}

TabularSurrogate load_tabular(std::istream& in, const SpaceSpec& spec) {
  CsvReader reader(in);
  auto header = reader.next();
  if (!header || header->fields.empty() || header->fields[0] != "genotype") {
    throw DataError("expected header 'genotype,accuracy[,stddev]'");
  }
  bool has_stddev = header->fields.size() == 3 && header->fields[2] == "stddev";
  if (header->fields.size() < 2 || header->fields[1] != "accuracy" ||
      (header->fields.size() == 3 && !has_stddev) || header->fields.size() > 3) {
    throw DataError("expected header 'genotype,accuracy[,stddev]'");
  }
  TabularSurrogate table(spec);
  while (auto row = reader.next()) {
    if (row->fields.size() == 1 && row->fields[0].empty()) continue;  // blank line
    if (row->fields.size() != header->fields.size()) {
      throw DataError("line " + std::to_string(row->line) + ": expected " +
                      std::to_string(header->fields.size()) + " fields, got " +
                      std::to_string(row->fields.size()));
    }
    double acc;
    std::optional<double> sd;
    try {
      acc = std::stod(row->fields[1]);
      if (has_stddev) sd = std::stod(row->fields[2]);
    } catch (const std::exception&) {
      throw DataError("line " + std::to_string(row->line) + ": malformed number");
    }
    try {
      table.insert(row->fields[0], acc, sd);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(row->line) + ": " + e.what());
    }
  }
  return table;
}

SyntheticSurrogate::SyntheticSurrogate(SyntheticCoefficients c, double scale)
    : coeff_(c), scale_(scale), spec_(SpaceSpec::darts()) {}

double SyntheticSurrogate::evaluate_impl(const Architecture& arch) const {
  auto count_if = [](const Cell& c, auto pred) {
    return static_cast<double>(
        std::count_if(c.edges().begin(), c.edges().end(),
                      [&](const Edge& e) { return pred(e.op); }));
  };
  double n = static_cast<double>(arch.normal.edges().size());
  double sep_n = count_if(arch.normal, is_sep_conv);
  double pool_n = count_if(arch.normal, is_pool);
  double sep_r = count_if(*arch.reduce, is_sep_conv);
  double acc = coeff_.base;
  if (has_residual_link(arch.normal).present) acc += coeff_.residual_bonus;
  acc += coeff_.sep_slope * (sep_n / n);
  acc -= coeff_.pool_penalty * (pool_n / n);
  acc += coeff_.reduce_sep_slope * (sep_r / n);
  return scale_ * std::clamp(acc, 0.0, 1.0);
}

std::unique_ptr<Evaluator> make_evaluator(const std::string& descriptor, const SpaceSpec& spec) {
  if (descriptor == "synthetic") {
    if (spec.kind != SpaceKind::darts) {
      throw DataError("the synthetic surrogate models DARTS architectures only");
    }
    return std::make_unique<SyntheticSurrogate>();
  }
  if (descriptor.rfind("tabular:", 0) == 0) {
    std::string path = descriptor.substr(8);
    std::ifstream in(path);
    if (!in) throw DataError("cannot open tabular surrogate file: " + path);
    return std::make_unique<TabularSurrogate>(load_tabular(in, spec));
  }
  if (descriptor.rfind("http://", 0) == 0 || descriptor.rfind("https://", 0) == 0) {
    return std::make_unique<RemoteSurrogate>(descriptor, spec);
  }
  throw DataError("unrecognized surrogate descriptor: " + descriptor +
                  " (expected synthetic | tabular:<path> | http://...)");
}

}  // namespace cellscope
