#include "cellscope/space.hpp"

#include <array>

namespace cellscope {

namespace {

constexpr std::array<std::string_view, 11> kLabels = {
    "sep_conv_3x3", "sep_conv_5x5", "dil_conv_3x3", "dil_conv_5x5",
    "max_pool_3x3", "avg_pool_3x3", "skip_connect", "none",
    "nor_conv_1x1", "nor_conv_3x3", "zero",
};

}  // namespace

std::string_view label(Primitive p) { return kLabels[static_cast<std::size_t>(p)]; }

std::optional<Primitive> primitive_from_label(std::string_view s) {
  for (std::size_t i = 0; i < kLabels.size(); ++i) {
    if (kLabels[i] == s) return static_cast<Primitive>(i);
  }
  return std::nullopt;
}

std::string_view to_string(SpaceKind k) {
  return k == SpaceKind::darts ? "darts" : "nb201";
}

SpaceSpec SpaceSpec::darts() {
  SpaceSpec s;
  s.kind = SpaceKind::darts;
  s.primitives = {Primitive::sep_conv_3x3, Primitive::sep_conv_5x5,
                  Primitive::dil_conv_3x3, Primitive::dil_conv_5x5,
                  Primitive::max_pool_3x3, Primitive::avg_pool_3x3,
                  Primitive::skip_connect};
  s.intermediate_nodes = 4;
  s.in_edges_per_node = 2;
  return s;
}

SpaceSpec SpaceSpec::nb201() {
  SpaceSpec s;
  s.kind = SpaceKind::nb201;
  s.primitives = {Primitive::none, Primitive::skip_connect, Primitive::nor_conv_1x1,
                  Primitive::nor_conv_3x3, Primitive::avg_pool_3x3};
  s.intermediate_nodes = 2;  // nodes 1 and 2; node 0 is input, node 3 output
  s.in_edges_per_node = 0;   // not constrained: all pairwise edges exist
  return s;
}

SpaceSpec SpaceSpec::with_primitives(std::vector<Primitive> pool) const {
  SpaceSpec s = *this;
  s.primitives = std::move(pool);
  return s;
}

bool SpaceSpec::allows(Primitive p) const {
  for (Primitive q : primitives) {
    if (q == p) return true;
  }
  return false;
}

int SpaceSpec::edges_per_cell() const {
  if (kind == SpaceKind::darts) return intermediate_nodes * in_edges_per_node;
  int n = nodes();
  return n * (n - 1) / 2;
}

}  // namespace cellscope
