#include "cellscope/motifs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cellscope/errors.hpp"

namespace cellscope {

namespace {

// One code tuple: (attach index, other index, attach label, direction,
// edge label, other label). direction 0 = arc attach->other, 1 = the
// reverse. Compared lexicographically.
using Tuple = std::array<int, 6>;

struct GrowthState {
  std::vector<int> node_of_index;   // code index -> pattern node
  std::vector<int> index_of_node;   // pattern node -> code index or -1
  std::uint32_t used_edges = 0;     // bitmask over pattern edge ids

  std::string key() const {
    std::string k;
    for (int v : node_of_index) {
      k += static_cast<char>(v + 1);
    }
    k += static_cast<char>(0);
    k += std::to_string(used_edges);
    return k;
  }
};

std::string code_to_string(const std::vector<Tuple>& code) {
  std::ostringstream os;
  for (const Tuple& t : code) {
    os << t[0] << ',' << t[1] << ',' << t[2] << ',' << t[3] << ',' << t[4] << ',' << t[5] << ';';
  }
  return os.str();
}

}  // namespace

Pattern canonical_pattern(const std::vector<NodeLabel>& node_labels,
                          const std::vector<Pattern::PEdge>& edges) {
  if (edges.empty()) throw std::invalid_argument("canonical_pattern: empty pattern");
  if (edges.size() > 31) throw std::invalid_argument("canonical_pattern: pattern too large");

  auto lab = [&](int node) { return static_cast<int>(node_labels[static_cast<std::size_t>(node)]); };

  // Lexicographic minimization level by level: all sequences have the
  // same length, so the minimal code takes the minimal tuple at every
  // position among the states that realized the minimal prefix.
  std::vector<GrowthState> states;
  std::vector<Tuple> code;

  // Level 0: every edge in both orientations roots a traversal.
  {
    Tuple best{};
    bool have = false;
    std::vector<std::pair<Tuple, GrowthState>> opts;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& ed = edges[e];
      for (int orient = 0; orient < 2; ++orient) {
        int a = orient == 0 ? ed.src : ed.dst;
        int b = orient == 0 ? ed.dst : ed.src;
        Tuple t{0, 1, lab(a), orient == 0 ? 0 : 1, static_cast<int>(ed.label), lab(b)};
        if (a == b) continue;  // self loops do not occur in these DAGs
        GrowthState s;
        s.node_of_index = {a, b};
        s.index_of_node.assign(node_labels.size(), -1);
        s.index_of_node[static_cast<std::size_t>(a)] = 0;
        s.index_of_node[static_cast<std::size_t>(b)] = 1;
        s.used_edges = 1u << e;
        if (!have || t < best) {
          best = t;
          have = true;
          opts.clear();
        }
        if (t == best) opts.emplace_back(t, std::move(s));
      }
    }
    code.push_back(best);
    for (auto& [t, s] : opts) states.push_back(std::move(s));
  }

  for (std::size_t level = 1; level < edges.size(); ++level) {
    Tuple best{};
    bool have = false;
    std::vector<GrowthState> next;
    std::set<std::string> seen;
    for (const GrowthState& st : states) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (st.used_edges & (1u << e)) continue;
        const auto& ed = edges[e];
        int is = st.index_of_node[static_cast<std::size_t>(ed.src)];
        int id = st.index_of_node[static_cast<std::size_t>(ed.dst)];
        if (is < 0 && id < 0) continue;  // not adjacent to the grown part yet
        Tuple t;
        GrowthState ns = st;
        ns.used_edges |= 1u << e;
        if (is >= 0 && id >= 0) {
          // closing edge: encode from the later-discovered endpoint
          int ai = std::max(is, id), bi = std::min(is, id);
          int dir = (is == ai) ? 0 : 1;  // 0: arc runs ai->bi
          t = Tuple{ai, bi, lab(st.node_of_index[static_cast<std::size_t>(ai)]), dir,
                    static_cast<int>(ed.label),
                    lab(st.node_of_index[static_cast<std::size_t>(bi)])};
        } else if (is >= 0) {
          t = Tuple{is, static_cast<int>(st.node_of_index.size()), lab(ed.src), 0,
                    static_cast<int>(ed.label), lab(ed.dst)};
          ns.index_of_node[static_cast<std::size_t>(ed.dst)] =
              static_cast<int>(ns.node_of_index.size());
          ns.node_of_index.push_back(ed.dst);
        } else {
          t = Tuple{id, static_cast<int>(st.node_of_index.size()), lab(ed.dst), 1,
                    static_cast<int>(ed.label), lab(ed.src)};
          ns.index_of_node[static_cast<std::size_t>(ed.src)] =
              static_cast<int>(ns.node_of_index.size());
          ns.node_of_index.push_back(ed.src);
        }
        if (!have || t < best) {
          best = t;
          have = true;
          next.clear();
          seen.clear();
        }
        if (t == best && seen.insert(ns.key()).second) next.push_back(std::move(ns));
      }
    }
    if (!have) throw std::invalid_argument("canonical_pattern: pattern is not connected");
    code.push_back(best);
    states = std::move(next);
  }

  // Realize the pattern in code order from any winning state (all give
  // the same code by construction).
  const GrowthState& win = states.front();
  Pattern p;
  p.code = code_to_string(code);
  for (int node : win.node_of_index) {
    p.node_labels.push_back(node_labels[static_cast<std::size_t>(node)]);
  }
  for (const Tuple& t : code) {
    int ai = t[0], bi = t[1], dir = t[3];
    Pattern::PEdge pe;
    pe.label = static_cast<EdgeLabel>(t[4]);
    pe.src = dir == 0 ? ai : bi;
    pe.dst = dir == 0 ? bi : ai;
    p.edges.push_back(pe);
  }
  return p;
}

namespace {

struct DagIndex {
  int max_id = -1;
  std::vector<NodeLabel> label_of;                 // by node id
  std::vector<bool> exists;
  std::vector<std::vector<const LabeledDag::Arc*>> out;
  std::vector<std::vector<const LabeledDag::Arc*>> in;

  explicit DagIndex(const LabeledDag& g) {
    for (const auto& n : g.nodes) max_id = std::max(max_id, n.id);
    for (const auto& a : g.arcs) max_id = std::max({max_id, a.src, a.dst});
    label_of.assign(static_cast<std::size_t>(max_id + 1), NodeLabel::inter);
    exists.assign(static_cast<std::size_t>(max_id + 1), false);
    out.resize(static_cast<std::size_t>(max_id + 1));
    in.resize(static_cast<std::size_t>(max_id + 1));
    for (const auto& n : g.nodes) {
      label_of[static_cast<std::size_t>(n.id)] = n.label;
      exists[static_cast<std::size_t>(n.id)] = true;
    }
    for (const auto& a : g.arcs) {
      out[static_cast<std::size_t>(a.src)].push_back(&a);
      in[static_cast<std::size_t>(a.dst)].push_back(&a);
    }
  }

  bool has_arc(int s, int d, EdgeLabel l) const {
    for (const auto* a : out[static_cast<std::size_t>(s)]) {
      if (a->dst == d && a->label == l) return true;
    }
    return false;
  }
};

// Backtracking embedding enumeration in pattern code order. Each edge
// after the first touches an already-assigned node, so the frontier is
// always anchored. Returns true if the visitor stopped the walk.
bool for_each_embedding(const Pattern& p, const DagIndex& gi,
                        const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> assign(p.node_labels.size(), -1);
  std::vector<bool> used(gi.exists.size(), false);

  std::function<bool(std::size_t)> step = [&](std::size_t k) -> bool {
    if (k == p.edges.size()) return visit(assign);
    const auto& pe = p.edges[k];
    int ms = assign[static_cast<std::size_t>(pe.src)];
    int md = assign[static_cast<std::size_t>(pe.dst)];
    if (ms >= 0 && md >= 0) {
      if (gi.has_arc(ms, md, pe.label)) return step(k + 1);
      return false;
    }
    if (ms >= 0) {
      for (const auto* a : gi.out[static_cast<std::size_t>(ms)]) {
        if (a->label != pe.label || used[static_cast<std::size_t>(a->dst)]) continue;
        if (gi.label_of[static_cast<std::size_t>(a->dst)] !=
            p.node_labels[static_cast<std::size_t>(pe.dst)]) {
          continue;
        }
        assign[static_cast<std::size_t>(pe.dst)] = a->dst;
        used[static_cast<std::size_t>(a->dst)] = true;
        if (step(k + 1)) return true;
        used[static_cast<std::size_t>(a->dst)] = false;
        assign[static_cast<std::size_t>(pe.dst)] = -1;
      }
      return false;
    }
    if (md >= 0) {
      for (const auto* a : gi.in[static_cast<std::size_t>(md)]) {
        if (a->label != pe.label || used[static_cast<std::size_t>(a->src)]) continue;
        if (gi.label_of[static_cast<std::size_t>(a->src)] !=
            p.node_labels[static_cast<std::size_t>(pe.src)]) {
          continue;
        }
        assign[static_cast<std::size_t>(pe.src)] = a->src;
        used[static_cast<std::size_t>(a->src)] = true;
        if (step(k + 1)) return true;
        used[static_cast<std::size_t>(a->src)] = false;
        assign[static_cast<std::size_t>(pe.src)] = -1;
      }
      return false;
    }
    // first edge: anchor anywhere
    for (int s = 0; s <= gi.max_id; ++s) {
      if (!gi.exists[static_cast<std::size_t>(s)]) continue;
      for (const auto* a : gi.out[static_cast<std::size_t>(s)]) {
        if (a->label != pe.label || a->src == a->dst) continue;
        if (gi.label_of[static_cast<std::size_t>(a->src)] !=
                p.node_labels[static_cast<std::size_t>(pe.src)] ||
            gi.label_of[static_cast<std::size_t>(a->dst)] !=
                p.node_labels[static_cast<std::size_t>(pe.dst)]) {
          continue;
        }
        assign[static_cast<std::size_t>(pe.src)] = a->src;
        assign[static_cast<std::size_t>(pe.dst)] = a->dst;
        used[static_cast<std::size_t>(a->src)] = true;
        used[static_cast<std::size_t>(a->dst)] = true;
        if (step(k + 1)) return true;
        used[static_cast<std::size_t>(a->src)] = false;
        used[static_cast<std::size_t>(a->dst)] = false;
        assign[static_cast<std::size_t>(pe.src)] = -1;
        assign[static_cast<std::size_t>(pe.dst)] = -1;
      }
    }
    return false;
  };
  return step(0);
}

LabeledDag strip_concat(const LabeledDag& g) {
  LabeledDag out;
  out.nodes = g.nodes;
  for (const auto& a : g.arcs) {
    if (a.label != kConcatLabel) out.arcs.push_back(a);
  }
  return out;
}

}  // namespace

bool contains(const Pattern& pattern, const LabeledDag& dag) {
  if (pattern.edges.empty()) return true;
  DagIndex gi(dag);
  return for_each_embedding(pattern, gi, [](const std::vector<int>&) { return true; });
}

long long count_containing(const Pattern& pattern, const std::vector<LabeledDag>& corpus) {
  long long n = 0;
  for (const LabeledDag& g : corpus) {
    if (contains(pattern, g)) ++n;
  }
  return n;
}

std::vector<MinedPattern> mine_frequent(const std::vector<LabeledDag>& corpus,
                                        double min_support, int max_edges,
                                        const MineOptions& opts) {
  if (corpus.empty()) throw std::invalid_argument("mine_frequent: empty corpus");
  if (!(min_support > 0.0 && min_support <= 1.0)) {
    throw std::invalid_argument("mine_frequent: min_support must be in (0, 1]");
  }
  const long long T = static_cast<long long>(corpus.size());
  const auto frequent = [&](long long c) {
    return static_cast<double>(c) >= min_support * static_cast<double>(T) - 1e-9;
  };

  std::vector<LabeledDag> graphs;
  graphs.reserve(corpus.size());
  for (const LabeledDag& g : corpus) {
    graphs.push_back(opts.include_concat ? g : strip_concat(g));
  }
  std::vector<DagIndex> indexes;
  indexes.reserve(graphs.size());
  for (const LabeledDag& g : graphs) indexes.emplace_back(g);

  struct Cand {
    Pattern pattern;
    std::set<int> occ;
  };
  std::map<std::string, Cand> frontier;

  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (const auto& a : graphs[i].arcs) {
      DagIndex& gi = indexes[i];
      std::vector<NodeLabel> nl = {gi.label_of[static_cast<std::size_t>(a.src)],
                                   gi.label_of[static_cast<std::size_t>(a.dst)]};
      Pattern p = canonical_pattern(nl, {{0, 1, a.label}});
      auto [it, fresh] = frontier.try_emplace(p.code);
      if (fresh) it->second.pattern = std::move(p);
      it->second.occ.insert(static_cast<int>(i));
    }
  }

  std::set<std::string> visited;
  std::vector<MinedPattern> results;
  for (auto it = frontier.begin(); it != frontier.end();) {
    visited.insert(it->first);
    if (!frequent(static_cast<long long>(it->second.occ.size()))) {
      it = frontier.erase(it);
    } else {
      results.push_back({it->second.pattern, static_cast<long long>(it->second.occ.size())});
      ++it;
    }
  }

  while (!frontier.empty()) {
    std::map<std::string, Cand> next;
    for (const auto& [code, cand] : frontier) {
      const Pattern& p = cand.pattern;
      if (p.edge_count() >= max_edges) continue;
      for (int g : cand.occ) {
        const DagIndex& gi = indexes[static_cast<std::size_t>(g)];
        for_each_embedding(p, gi, [&](const std::vector<int>& assign) {
          // arcs already used by this embedding (simple graphs: the
          // node images determine them)
          std::set<std::pair<std::pair<int, int>, EdgeLabel>> used;
          for (const auto& pe : p.edges) {
            used.insert({{assign[static_cast<std::size_t>(pe.src)],
                          assign[static_cast<std::size_t>(pe.dst)]},
                         pe.label});
          }
          std::vector<int> image_index(gi.exists.size(), -1);
          for (std::size_t k = 0; k < assign.size(); ++k) {
            image_index[static_cast<std::size_t>(assign[k])] = static_cast<int>(k);
          }
          for (const auto& a : graphs[static_cast<std::size_t>(g)].arcs) {
            if (used.count({{a.src, a.dst}, a.label})) continue;
            int is = image_index[static_cast<std::size_t>(a.src)];
            int id = image_index[static_cast<std::size_t>(a.dst)];
            if (is < 0 && id < 0) continue;
            std::vector<NodeLabel> nl = p.node_labels;
            std::vector<Pattern::PEdge> pe = p.edges;
            int s = is, d = id;
            if (s < 0) {
              s = static_cast<int>(nl.size());
              nl.push_back(gi.label_of[static_cast<std::size_t>(a.src)]);
            }
            if (d < 0) {
              d = static_cast<int>(nl.size());
              nl.push_back(gi.label_of[static_cast<std::size_t>(a.dst)]);
            }
            pe.push_back({s, d, a.label});
            Pattern ext = canonical_pattern(nl, pe);
            if (visited.count(ext.code)) continue;
            auto [it, fresh] = next.try_emplace(ext.code);
            if (fresh) it->second.pattern = std::move(ext);
            it->second.occ.insert(g);
          }
          return false;  // keep enumerating embeddings
        });
      }
    }
    frontier.clear();
    for (auto& [code, cand] : next) {
      visited.insert(code);
      if (!frequent(static_cast<long long>(cand.occ.size()))) continue;
      results.push_back({cand.pattern, static_cast<long long>(cand.occ.size())});
      frontier.emplace(code, std::move(cand));
    }
  }

  std::sort(results.begin(), results.end(), [](const MinedPattern& a, const MinedPattern& b) {
    if (a.pattern.edge_count() != b.pattern.edge_count()) {
      return a.pattern.edge_count() < b.pattern.edge_count();
    }
    return a.pattern.code < b.pattern.code;
  });
  return results;
}

LabeledDag important_subgraph(const Architecture& arch, const std::vector<OIRecord>& records,
                              double threshold, const SpaceSpec& spec, CellKind kind) {
  const Cell& cell = arch.cell(kind);
  std::string arch_id = serialize_genotype(arch, spec);
  std::vector<int> keep;
  std::set<int> dsts;
  for (const Edge& e : cell.edges()) dsts.insert(e.dst);
  for (int d : dsts) {
    int n = static_cast<int>(cell.in_edges(d).size());
    for (int s = 0; s < n; ++s) {
      const OIRecord* found = nullptr;
      for (const OIRecord& r : records) {
        if (r.arch_id == arch_id && r.address == EdgeAddress{kind, d, s}) {
          found = &r;
          break;
        }
      }
      if (!found) {
        throw DataError("missing OI record for (" + std::string(to_string(kind)) + ", dst " +
                        std::to_string(d) + ", slot " + std::to_string(s) + ")");
      }
      if (std::abs(found->oi) >= threshold) keep.push_back(cell.edge_index(d, s));
    }
  }
  return to_dag_subset(cell, spec, keep);
}

std::vector<LabeledDag> null_reference(const LabeledDag& dag, int m, Rng& rng, int repetitions) {
  std::vector<int> op_arcs;
  for (std::size_t i = 0; i < dag.arcs.size(); ++i) {
    if (dag.arcs[i].label != kConcatLabel) op_arcs.push_back(static_cast<int>(i));
  }
  if (m < 0 || m > static_cast<int>(op_arcs.size())) {
    throw std::invalid_argument("null_reference: m exceeds available operation edges");
  }
  std::vector<LabeledDag> out;
  out.reserve(static_cast<std::size_t>(repetitions));
  for (int rep = 0; rep < repetitions; ++rep) {
    std::vector<int> pool = op_arcs;
    std::vector<int> chosen;
    for (int k = 0; k < m; ++k) {
      std::size_t j = static_cast<std::size_t>(k) + rng.index(pool.size() - static_cast<std::size_t>(k));
      std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
      chosen.push_back(pool[static_cast<std::size_t>(k)]);
    }
    std::sort(chosen.begin(), chosen.end());
    LabeledDag sub;
    std::set<int> node_ids;
    for (int idx : chosen) {
      const auto& a = dag.arcs[static_cast<std::size_t>(idx)];
      sub.arcs.push_back(a);
      node_ids.insert(a.src);
      node_ids.insert(a.dst);
    }
    for (const auto& nd : dag.nodes) {
      if (node_ids.count(nd.id)) sub.nodes.push_back(nd);
    }
    out.push_back(std::move(sub));
  }
  return out;
}

SupportStats support_stats(Pattern pattern, long long count_target, long long target_total,
                           long long count_ref, long long ref_total) {
  SupportStats s;
  s.pattern = std::move(pattern);
  s.count_target = count_target;
  s.count_ref = count_ref;
  s.support_target = static_cast<double>(count_target) / static_cast<double>(target_total);
  s.support_ref = static_cast<double>(count_ref) / static_cast<double>(ref_total);
  double floored_ref =
      static_cast<double>(std::max<long long>(count_ref, 1)) / static_cast<double>(ref_total);
  s.ratio = s.support_target / floored_ref;
  return s;
}

std::vector<SupportStats> ratio_rank(const std::vector<MinedPattern>& target,
                                     long long target_total,
                                     const std::vector<LabeledDag>& reference) {
  std::vector<SupportStats> out;
  out.reserve(target.size());
  for (const MinedPattern& mp : target) {
    long long ref_count = count_containing(mp.pattern, reference);
    out.push_back(support_stats(mp.pattern, mp.count, target_total, ref_count,
                                static_cast<long long>(reference.size())));
  }
  std::sort(out.begin(), out.end(), [](const SupportStats& a, const SupportStats& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.support_target != b.support_target) return a.support_target > b.support_target;
    return a.pattern.code < b.pattern.code;
  });
  return out;
}

ResidualReport has_residual_link(const Cell& cell, bool strict) {
  ResidualReport r;
  for (const Edge& e : cell.edges()) {
    if (e.op != Primitive::skip_connect) continue;
    if (e.src >= 2) {
      ++r.other_skips;
      continue;
    }
    if (strict) {
      bool conv_sibling = false;
      for (const Edge& s : cell.in_edges(e.dst)) {
        if (s.src != e.src && is_convolution(s.op)) conv_sibling = true;
      }
      if (!conv_sibling) continue;
    }
    r.present = true;
    if (e.src == 0) r.via_in0 = true;
    if (e.src == 1) r.via_in1 = true;
  }
  return r;
}

std::string render_pattern(const Pattern& pattern) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pattern.edges.size(); ++i) {
    const auto& e = pattern.edges[i];
    if (i) os << "; ";
    os << to_string(pattern.node_labels[static_cast<std::size_t>(e.src)]) << '#' << e.src
       << " -" << edge_label_name(e.label) << "-> "
       << to_string(pattern.node_labels[static_cast<std::size_t>(e.dst)]) << '#' << e.dst;
  }
  return os.str();
}

}  // namespace cellscope
