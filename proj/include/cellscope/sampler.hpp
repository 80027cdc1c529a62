#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cellscope/cell.hpp"
#include "cellscope/rng.hpp"

namespace cellscope {

/// Sampling constraints.
///
/// skip: residual wiring. DARTS wires skip_connect from both inputs
/// into intermediate node 0; NB201 places skip_connect on the direct
/// input->output edge.
///
/// prim: restricted primitive pool. DARTS draws the remaining
/// operations from {sep_conv_3x3, sep_conv_5x5}; NB201 from
/// {nor_conv_1x1, nor_conv_3x3}.
///
/// p: probability that a non-fixed operation slot takes a parameterless
/// primitive instead of the pool draw (skip_connect, or uniformly one
/// of {skip_connect, max_pool_3x3, avg_pool_3x3} when pool_allowed).
/// Only meaningful together with prim.
struct ConstraintSet {
  bool skip = false;
  bool prim = false;
  bool pool_allowed = false;
  std::optional<double> p;
};

enum class SampleGroup { random, skip, prim, primskip };

std::string_view to_string(SampleGroup g);
ConstraintSet constraints_for(SampleGroup g);

/// One constrained random architecture. The same rule is applied to
/// both the normal and the reduce cell. Constraints are constructive:
/// every sample satisfies them and passes validation.
Architecture sample(const SpaceSpec& spec, const ConstraintSet& constraints, Rng& rng);

/// n architectures from the named constraint combination.
std::vector<Architecture> group_sample(SampleGroup group, int n, const SpaceSpec& spec, Rng& rng);

}  // namespace cellscope
