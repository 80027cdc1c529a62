#include "cellscope/dag.hpp"

#include <algorithm>
#include <map>

namespace cellscope {

std::string_view to_string(NodeLabel l) {
  switch (l) {
    case NodeLabel::in0: return "in0";
    case NodeLabel::in1: return "in1";
    case NodeLabel::inter: return "inter";
    case NodeLabel::out: return "out";
  }
  return "?";
}

std::string_view edge_label_name(EdgeLabel l) {
  if (l == kConcatLabel) return "concat";
  return label(static_cast<Primitive>(l));
}

int LabeledDag::op_edge_count() const {
  int n = 0;
  for (const Arc& a : arcs) {
    if (a.label != kConcatLabel) ++n;
  }
  return n;
}

namespace {

// DARTS DAG node ids: 0,1 inputs; 2..2+T-1 intermediates; 2+T output.
// NB201 node ids are the cell's own 0..3 (0 input, last output).
NodeLabel darts_node_label(int id, int inter_count) {
  if (id == 0) return NodeLabel::in0;
  if (id == 1) return NodeLabel::in1;
  if (id < 2 + inter_count) return NodeLabel::inter;
  return NodeLabel::out;
}

NodeLabel nb201_node_label(int id, int nodes) {
  if (id == 0) return NodeLabel::in0;
  if (id == nodes - 1) return NodeLabel::out;
  return NodeLabel::inter;
}

}  // namespace

LabeledDag to_dag(const Cell& cell, const SpaceSpec& spec) {
  LabeledDag g;
  if (spec.kind == SpaceKind::darts) {
    int T = spec.intermediate_nodes;
    for (int id = 0; id <= 2 + T; ++id) {
      g.nodes.push_back({id, darts_node_label(id, T)});
    }
    for (const Edge& e : cell.edges()) {
      g.arcs.push_back({e.src, 2 + e.dst, edge_label(e.op)});
    }
    for (int t = 0; t < T; ++t) {
      g.arcs.push_back({2 + t, 2 + T, kConcatLabel});
    }
  } else {
    int n = spec.nodes();
    for (int id = 0; id < n; ++id) {
      g.nodes.push_back({id, nb201_node_label(id, n)});
    }
    for (const Edge& e : cell.edges()) {
      if (e.op == Primitive::none) continue;
      g.arcs.push_back({e.src, e.dst, edge_label(e.op)});
    }
  }
  return g;
}

LabeledDag to_dag_subset(const Cell& cell, const SpaceSpec& spec,
                         const std::vector<int>& edge_indices) {
  LabeledDag g;
  std::map<int, NodeLabel> used;  // dag node id -> label
  int T = spec.intermediate_nodes;
  for (int idx : edge_indices) {
    const Edge& e = cell.edges().at(static_cast<std::size_t>(idx));
    if (e.op == Primitive::none) continue;  // disabled edge, same as to_dag
    int s, d;
    if (spec.kind == SpaceKind::darts) {
      s = e.src;
      d = 2 + e.dst;
      used.emplace(s, darts_node_label(s, T));
      used.emplace(d, darts_node_label(d, T));
    } else {
      s = e.src;
      d = e.dst;
      used.emplace(s, nb201_node_label(s, spec.nodes()));
      used.emplace(d, nb201_node_label(d, spec.nodes()));
    }
    g.arcs.push_back({s, d, edge_label(e.op)});
  }
  for (auto& [id, lab] : used) g.nodes.push_back({id, lab});
  std::sort(g.arcs.begin(), g.arcs.end(), [](const LabeledDag::Arc& a, const LabeledDag::Arc& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.label < b.label;
  });
  return g;
}

}  // namespace cellscope
