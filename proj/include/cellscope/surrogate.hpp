#pragma once

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "cellscope/cell.hpp"
#include "cellscope/genotype.hpp"

namespace cellscope {

/// Uniform performance function y(arch) -> accuracy in [0, 1].
///
/// evaluate() enforces the shared preconditions (valid architecture, no
/// disabled 'zero' operations) before dispatching; implementations must
/// tolerate concurrent calls.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  double evaluate(const Architecture& arch) const;

  virtual const SpaceSpec& space() const = 0;

 protected:
  virtual double evaluate_impl(const Architecture& arch) const = 0;
};

/// y(arch) = c for every architecture. Handy calibration tool: every
/// importance value under it is exactly zero.
class ConstantSurrogate : public Evaluator {
 public:
  ConstantSurrogate(double value, SpaceSpec spec) : value_(value), spec_(std::move(spec)) {}
  const SpaceSpec& space() const override { return spec_; }

 protected:
  double evaluate_impl(const Architecture&) const override { return value_; }

 private:
  double value_;
  SpaceSpec spec_;
};

/// Accuracy table keyed by canonical genotype string.
class TabularSurrogate : public Evaluator {
 public:
  explicit TabularSurrogate(SpaceSpec spec) : spec_(std::move(spec)) {}

  /// Throws DataError on duplicate canonical keys or out-of-range accuracy.
  void insert(const std::string& genotype, double accuracy,
              std::optional<double> stddev = std::nullopt);

  std::size_t size() const { return table_.size(); }
  std::optional<double> lookup(const std::string& canonical_genotype) const;
  std::optional<double> stddev(const std::string& canonical_genotype) const;

  const SpaceSpec& space() const override { return spec_; }

 protected:
  double evaluate_impl(const Architecture& arch) const override;

 private:
  SpaceSpec spec_;
  std::map<std::string, double> table_;
  std::map<std::string, double> stddev_;
};

/// Loads `genotype,accuracy[,stddev]` CSV. Keys are canonicalized
/// before insertion, so two textual spellings of one cell collide.
TabularSurrogate load_tabular(std::istream& in, const SpaceSpec& spec);

struct SyntheticCoefficients {
  double base = 0.90;
  double residual_bonus = 0.03;
  double sep_slope = 0.02;
  double pool_penalty = 0.02;
  double reduce_sep_slope = 0.005;
};

/// Deterministic closed-form benchmark; rewards a residual link and
/// separable convolutions in the normal cell and mildly rewards
/// separable convolutions in the reduce cell:
///
///   acc = clamp(base + residual_bonus * [normal has input-origin skip]
///               + sep_slope * n_sep_normal/8 - pool_penalty * n_pool_normal/8
///               + reduce_sep_slope * n_sep_reduce/8, 0, 1)
///
/// Every analysis pipeline gets a hand-checkable oracle this way.
class SyntheticSurrogate : public Evaluator {
 public:
  explicit SyntheticSurrogate(SyntheticCoefficients c = {}, double scale = 1.0);

  const SpaceSpec& space() const override { return spec_; }
  const SyntheticCoefficients& coefficients() const { return coeff_; }

 protected:
  double evaluate_impl(const Architecture& arch) const override;

 private:
  SyntheticCoefficients coeff_;
  double scale_;
  SpaceSpec spec_;
};

struct RemoteOptions {
  int max_in_flight = 4;
  int retries = 2;           // idempotent re-sends after a transport failure
  int timeout_seconds = 10;
};

/// Client for an external prediction service:
///   POST /predict  {"genotype": "<canonical text>"}  ->  {"accuracy": x}
/// Non-2xx responses and malformed bodies surface as
/// EvalError{transport}. Requests beyond the in-flight cap block.
class RemoteSurrogate : public Evaluator {
 public:
  RemoteSurrogate(std::string base_url, SpaceSpec spec, RemoteOptions opts = {});
  ~RemoteSurrogate() override;

  const SpaceSpec& space() const override { return spec_; }

 protected:
  double evaluate_impl(const Architecture& arch) const override;

 private:
  struct Impl;
  SpaceSpec spec_;
  std::unique_ptr<Impl> impl_;
};

/// Builds an evaluator from a descriptor: `synthetic`,
/// `tabular:<csv path>` or `http://host:port`.
std::unique_ptr<Evaluator> make_evaluator(const std::string& descriptor, const SpaceSpec& spec);

}  // namespace cellscope
