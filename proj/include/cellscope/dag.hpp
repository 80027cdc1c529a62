#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellscope/cell.hpp"

namespace cellscope {

enum class NodeLabel : std::uint8_t { in0, in1, inter, out };

std::string_view to_string(NodeLabel l);

/// Edge labels are primitive ids plus the fixed output concatenation.
using EdgeLabel = std::uint8_t;
inline constexpr EdgeLabel kConcatLabel = 0xFF;

inline EdgeLabel edge_label(Primitive p) { return static_cast<EdgeLabel>(p); }
std::string_view edge_label_name(EdgeLabel l);

/// A small labeled DAG: the mining-side view of a cell (or of an
/// important-operation subset of one).
struct LabeledDag {
  struct Node {
    int id;
    NodeLabel label;
    friend bool operator==(const Node&, const Node&) = default;
  };
  struct Arc {
    int src;
    int dst;
    EdgeLabel label;
    friend bool operator==(const Arc&, const Arc&) = default;
  };

  std::vector<Node> nodes;
  std::vector<Arc> arcs;

  int op_edge_count() const;

  friend bool operator==(const LabeledDag&, const LabeledDag&) = default;
};

/// Full conversion: every operation edge, plus the fixed concatenation
/// arcs into the output node (DARTS). NB201 'none' edges are disabled
/// edges and are omitted.
LabeledDag to_dag(const Cell& cell, const SpaceSpec& spec);

/// DAG induced by a subset of the cell's edges (indices into
/// cell.edges()). Only the endpoint nodes are materialized; no concat
/// arcs. Used for important-operation subgraphs and null references.
LabeledDag to_dag_subset(const Cell& cell, const SpaceSpec& spec,
                         const std::vector<int>& edge_indices);

}  // namespace cellscope
