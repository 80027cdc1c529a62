#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cellscope/space.hpp"

namespace cellscope {

/// One operation placement.
///
/// DARTS coding (matches the genotype convention): `dst` is the
/// intermediate node index 0..3; `src` is 0/1 for the two cell inputs
/// and 2+j for intermediate node j. NB201 coding: `src` and `dst` are
/// plain node ids 0..3 with src < dst.
struct Edge {
  int src = 0;
  int dst = 0;
  Primitive op = Primitive::skip_connect;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class CellKind : std::uint8_t { normal, reduce };

std::string_view to_string(CellKind k);

/// An edge-attributed cell. Edges are kept in canonical storage order
/// (destination node ascending, then source index, then label), which
/// makes (dst, slot) a stable edge address.
class Cell {
 public:
  Cell() = default;
  explicit Cell(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }

  /// In-edges of a destination node, in slot order.
  std::vector<Edge> in_edges(int dst) const;

  /// Edge at (dst, slot). Throws std::out_of_range if absent.
  const Edge& edge_at(int dst, int slot) const;

  /// Index into edges() for (dst, slot), or -1.
  int edge_index(int dst, int slot) const;

  Cell with_op(int dst, int slot, Primitive op) const;
  Cell with_src(int dst, int slot, int src) const;

  friend bool operator==(const Cell&, const Cell&) = default;

 private:
  void normalize();
  std::vector<Edge> edges_;
};

struct Architecture {
  Cell normal;
  std::optional<Cell> reduce;  // absent in NB201 mode

  const Cell& cell(CellKind k) const;
  Cell& cell(CellKind k);

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct Violation {
  std::string code;     // stable identifier, e.g. "duplicate sources"
  std::string message;  // human-readable detail
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Cell& cell, const SpaceSpec& spec);
ValidationReport validate(const Architecture& arch, const SpaceSpec& spec);

/// Deduplication key: equal iff the cells are identical after the
/// within-node edge ordering normalization. Intermediate-node
/// relabeling is deliberately not quotiented.
std::string canonical_form(const Cell& cell);

struct Cardinality {
  unsigned __int128 cells = 0;
  unsigned __int128 architectures = 0;  // cells^2 in DARTS mode, cells otherwise
};

Cardinality space_cardinality(const SpaceSpec& spec);

std::string u128_to_string(unsigned __int128 v);

}  // namespace cellscope
