#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cellscope {

/// Candidate operation labels across both supported search spaces.
/// `zero` is reserved for disable schedules and is never a member of a
/// space's primitive set.
enum class Primitive : std::uint8_t {
  sep_conv_3x3,
  sep_conv_5x5,
  dil_conv_3x3,
  dil_conv_5x5,
  max_pool_3x3,
  avg_pool_3x3,
  skip_connect,
  none,
  nor_conv_1x1,
  nor_conv_3x3,
  zero,
};

std::string_view label(Primitive p);
std::optional<Primitive> primitive_from_label(std::string_view s);

inline bool is_sep_conv(Primitive p) {
  return p == Primitive::sep_conv_3x3 || p == Primitive::sep_conv_5x5;
}
inline bool is_dil_conv(Primitive p) {
  return p == Primitive::dil_conv_3x3 || p == Primitive::dil_conv_5x5;
}
inline bool is_pool(Primitive p) {
  return p == Primitive::max_pool_3x3 || p == Primitive::avg_pool_3x3;
}
inline bool is_convolution(Primitive p) {
  return is_sep_conv(p) || is_dil_conv(p) || p == Primitive::nor_conv_1x1 ||
         p == Primitive::nor_conv_3x3;
}

enum class SpaceKind : std::uint8_t { darts, nb201 };

std::string_view to_string(SpaceKind k);

/// Static description of a cell search space: which labels an edge may
/// carry and how the wiring is constrained. Only the two named spaces
/// are fully specified; the constraint fields exist so restricted
/// variants (e.g. a reduced primitive pool) can reuse all machinery.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::darts;
  std::vector<Primitive> primitives;
  int intermediate_nodes = 4;  // DARTS: inter nodes; NB201: nodes - 2
  int in_edges_per_node = 2;   // DARTS wiring constraint

  static SpaceSpec darts();
  static SpaceSpec nb201();

  /// Same space with a restricted primitive pool.
  SpaceSpec with_primitives(std::vector<Primitive> pool) const;

  int num_primitives() const { return static_cast<int>(primitives.size()); }
  bool allows(Primitive p) const;

  /// NB201 cells span `nodes()` totally ordered nodes with one edge per
  /// (i, j) pair, i < j.
  int nodes() const { return intermediate_nodes + 2; }

  /// Number of edges a conforming cell carries.
  int edges_per_cell() const;
};

}  // namespace cellscope
