#include "cellscope/sampler.hpp"

#include <stdexcept>

namespace cellscope {

std::string_view to_string(SampleGroup g) {
  switch (g) {
    case SampleGroup::random: return "random";
    case SampleGroup::skip: return "skip";
    case SampleGroup::prim: return "prim";
    case SampleGroup::primskip: return "primskip";
  }
  return "?";
}

ConstraintSet constraints_for(SampleGroup g) {
  ConstraintSet c;
  c.skip = g == SampleGroup::skip || g == SampleGroup::primskip;
  c.prim = g == SampleGroup::prim || g == SampleGroup::primskip;
  return c;
}

namespace {

Primitive draw_op(const SpaceSpec& spec, const ConstraintSet& c, Rng& rng) {
  if (c.prim) {
    if (c.p && rng.chance(*c.p)) {
      if (c.pool_allowed) {
        switch (rng.below(3)) {
          case 0: return Primitive::skip_connect;
          case 1: return Primitive::max_pool_3x3;
          default: return Primitive::avg_pool_3x3;
        }
      }
      return Primitive::skip_connect;
    }
    if (spec.kind == SpaceKind::darts) {
      return rng.below(2) == 0 ? Primitive::sep_conv_3x3 : Primitive::sep_conv_5x5;
    }
    return rng.below(2) == 0 ? Primitive::nor_conv_1x1 : Primitive::nor_conv_3x3;
  }
  return spec.primitives[rng.index(spec.primitives.size())];
}

Cell sample_darts_cell(const SpaceSpec& spec, const ConstraintSet& c, Rng& rng) {
  std::vector<Edge> edges;
  for (int t = 0; t < spec.intermediate_nodes; ++t) {
    if (c.skip && t == 0) {
      edges.push_back({0, 0, Primitive::skip_connect});
      edges.push_back({1, 0, Primitive::skip_connect});
      continue;
    }
    // uniform over the C(t+2, 2) unordered source pairs
    int sources = t + 2;
    int pairs = sources * (sources - 1) / 2;
    int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(pairs)));
    int a = 0, b = 1;
    for (int i = 0, k = 0; i < sources; ++i) {
      for (int j = i + 1; j < sources; ++j, ++k) {
        if (k == pick) {
          a = i;
          b = j;
        }
      }
    }
    edges.push_back({a, t, draw_op(spec, c, rng)});
    edges.push_back({b, t, draw_op(spec, c, rng)});
  }
  return Cell(std::move(edges));
}

Cell sample_nb201_cell(const SpaceSpec& spec, const ConstraintSet& c, Rng& rng) {
  std::vector<Edge> edges;
  int n = spec.nodes();
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (c.skip && i == 0 && j == n - 1) {
        edges.push_back({i, j, Primitive::skip_connect});
      } else {
        edges.push_back({i, j, draw_op(spec, c, rng)});
      }
    }
  }
  return Cell(std::move(edges));
}

}  // namespace

Architecture sample(const SpaceSpec& spec, const ConstraintSet& constraints, Rng& rng) {
  if (constraints.p && !constraints.prim) {
    throw std::invalid_argument("the parameterless probability applies only with the prim constraint");
  }
  if (spec.kind == SpaceKind::darts) {
    Cell normal = sample_darts_cell(spec, constraints, rng);
    Cell reduce = sample_darts_cell(spec, constraints, rng);
    return Architecture{std::move(normal), std::move(reduce)};
  }
  return Architecture{sample_nb201_cell(spec, constraints, rng), std::nullopt};
}

std::vector<Architecture> group_sample(SampleGroup group, int n, const SpaceSpec& spec, Rng& rng) {
  if (n < 1) throw std::invalid_argument("group_sample: n must be at least 1");
  ConstraintSet c = constraints_for(group);
  std::vector<Architecture> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(sample(spec, c, rng));
  return out;
}

}  // namespace cellscope
