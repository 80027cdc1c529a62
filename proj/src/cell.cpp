#include "cellscope/cell.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cellscope {

std::string_view to_string(CellKind k) {
  return k == CellKind::normal ? "normal" : "reduce";
}

Cell::Cell(std::vector<Edge> edges) : edges_(std::move(edges)) { normalize(); }

void Cell::normalize() {
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    if (a.dst != b.dst) return a.dst < b.dst;
    if (a.src != b.src) return a.src < b.src;
    return label(a.op) < label(b.op);
  });
}

std::vector<Edge> Cell::in_edges(int dst) const {
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (e.dst == dst) out.push_back(e);
  }
  return out;
}

int Cell::edge_index(int dst, int slot) const {
  int seen = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].dst == dst) {
      if (seen == slot) return static_cast<int>(i);
      ++seen;
    }
  }
  return -1;
}

const Edge& Cell::edge_at(int dst, int slot) const {
  int i = edge_index(dst, slot);
  if (i < 0) throw std::out_of_range("no edge at requested (dst, slot)");
  return edges_[static_cast<std::size_t>(i)];
}

Cell Cell::with_op(int dst, int slot, Primitive op) const {
  std::vector<Edge> es = edges_;
  int i = edge_index(dst, slot);
  if (i < 0) throw std::out_of_range("no edge at requested (dst, slot)");
  es[static_cast<std::size_t>(i)].op = op;
  return Cell(std::move(es));
}

Cell Cell::with_src(int dst, int slot, int src) const {
  std::vector<Edge> es = edges_;
  int i = edge_index(dst, slot);
  if (i < 0) throw std::out_of_range("no edge at requested (dst, slot)");
  es[static_cast<std::size_t>(i)].src = src;
  return Cell(std::move(es));
}

const Cell& Architecture::cell(CellKind k) const {
  if (k == CellKind::normal) return normal;
  if (!reduce) throw std::logic_error("architecture has no reduce cell");
  return *reduce;
}

Cell& Architecture::cell(CellKind k) {
  if (k == CellKind::normal) return normal;
  if (!reduce) throw std::logic_error("architecture has no reduce cell");
  return *reduce;
}

namespace {

void validate_darts(const Cell& cell, const SpaceSpec& spec, ValidationReport& r) {
  if (static_cast<int>(cell.edges().size()) != spec.edges_per_cell()) {
    r.violations.push_back({"wrong edge count",
                            "expected " + std::to_string(spec.edges_per_cell()) +
                                " edges, got " + std::to_string(cell.edges().size())});
  }
  for (int t = 0; t < spec.intermediate_nodes; ++t) {
    auto in = cell.in_edges(t);
    if (static_cast<int>(in.size()) != spec.in_edges_per_node) {
      r.violations.push_back({"wrong in-edge count",
                              "node " + std::to_string(t) + " has " +
                                  std::to_string(in.size()) + " in-edges"});
      continue;
    }
    std::set<int> srcs;
    for (const Edge& e : in) {
      if (e.src < 0 || e.src >= t + 2) {
        r.violations.push_back({"bad source index",
                                "node " + std::to_string(t) + " edge from source " +
                                    std::to_string(e.src)});
      }
      if (!srcs.insert(e.src).second) {
        r.violations.push_back({"duplicate sources",
                                "node " + std::to_string(t) +
                                    " has two in-edges from source " +
                                    std::to_string(e.src)});
      }
    }
  }
  for (const Edge& e : cell.edges()) {
    if (e.dst < 0 || e.dst >= spec.intermediate_nodes) {
      r.violations.push_back(
          {"bad destination", "edge into node " + std::to_string(e.dst)});
    }
    if (e.op == Primitive::zero) {
      r.violations.push_back(
          {"reserved label", "edge (" + std::to_string(e.src) + " -> " +
                                 std::to_string(e.dst) + ") carries 'zero'"});
    } else if (!spec.allows(e.op)) {
      r.violations.push_back(
          {"unknown primitive", std::string("label '") + std::string(label(e.op)) +
                                    "' is not in the space's primitive set"});
    }
  }
}

void validate_nb201(const Cell& cell, const SpaceSpec& spec, ValidationReport& r) {
  int n = spec.nodes();
  if (static_cast<int>(cell.edges().size()) != spec.edges_per_cell()) {
    r.violations.push_back({"wrong edge count",
                            "expected " + std::to_string(spec.edges_per_cell()) +
                                " edges, got " + std::to_string(cell.edges().size())});
    return;
  }
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const Edge& e = cell.edges()[k];
      if (e.src != i || e.dst != j) {
        r.violations.push_back({"bad wiring",
                                "expected edge (" + std::to_string(i) + " -> " +
                                    std::to_string(j) + "), got (" +
                                    std::to_string(e.src) + " -> " +
                                    std::to_string(e.dst) + ")"});
      }
      if (e.op == Primitive::zero) {
        r.violations.push_back({"reserved label", "edge carries 'zero'"});
      } else if (!spec.allows(e.op)) {
        r.violations.push_back(
            {"unknown primitive", std::string("label '") + std::string(label(e.op)) +
                                      "' is not in the space's primitive set"});
      }
    }
  }
}

}  // namespace

ValidationReport validate(const Cell& cell, const SpaceSpec& spec) {
  ValidationReport r;
  if (spec.kind == SpaceKind::darts) {
    validate_darts(cell, spec, r);
  } else {
    validate_nb201(cell, spec, r);
  }
  return r;
}

ValidationReport validate(const Architecture& arch, const SpaceSpec& spec) {
  ValidationReport r = validate(arch.normal, spec);
  if (spec.kind == SpaceKind::darts) {
    if (!arch.reduce) {
      r.violations.push_back({"missing reduce cell", "DARTS architectures carry two cells"});
    } else {
      ValidationReport rr = validate(*arch.reduce, spec);
      for (auto& v : rr.violations) {
        v.message = "reduce: " + v.message;
        r.violations.push_back(std::move(v));
      }
    }
  } else if (arch.reduce) {
    r.violations.push_back({"unexpected reduce cell", "NB201 architectures are single-cell"});
  }
  return r;
}

std::string canonical_form(const Cell& cell) {
  // Storage order is already normalized; render it.
  std::ostringstream os;
  int last_dst = -1;
  for (const Edge& e : cell.edges()) {
    if (e.dst != last_dst) {
      if (last_dst >= 0) os << ';';
      os << 'n' << e.dst << ':';
      last_dst = e.dst;
    } else {
      os << '|';
    }
    os << e.src << '.' << label(e.op);
  }
  return os.str();
}

Cardinality space_cardinality(const SpaceSpec& spec) {
  Cardinality c;
  unsigned __int128 k = static_cast<unsigned>(spec.num_primitives());
  if (spec.kind == SpaceKind::darts) {
    unsigned __int128 cells = 1;
    for (int t = 1; t <= spec.intermediate_nodes; ++t) {
      // k^2 primitive choices times C(t+1, 2) source pairs per node
      cells *= k * k * (static_cast<unsigned>(t) * (t + 1) / 2);
    }
    c.cells = cells;
    c.architectures = cells * cells;
  } else {
    unsigned __int128 cells = 1;
    for (int e = 0; e < spec.edges_per_cell(); ++e) cells *= k;
    c.cells = cells;
    c.architectures = cells;
  }
  return c;
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace cellscope
