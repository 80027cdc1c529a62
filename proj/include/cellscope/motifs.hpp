#pragma once

#include <string>
#include <vector>

#include "cellscope/dag.hpp"
#include "cellscope/importance.hpp"
#include "cellscope/rng.hpp"

namespace cellscope {

/// A connected labeled subgraph in canonical form.
///
/// The code is the lexicographically minimal DFS-style edge sequence
/// over all connected traversals of the pattern, with tuples of
/// (attach index, other index, node label, arc direction, edge label,
/// node label). Two patterns are isomorphic iff their codes are equal.
/// node_labels/edges hold the realization in code order, so edge k
/// always touches a node introduced by edges 0..k-1.
struct Pattern {
  struct PEdge {
    int src;
    int dst;
    EdgeLabel label;
    friend bool operator==(const PEdge&, const PEdge&) = default;
  };

  std::vector<NodeLabel> node_labels;
  std::vector<PEdge> edges;
  std::string code;

  int node_count() const { return static_cast<int>(node_labels.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

/// Canonicalizes a connected labeled graph given as node labels plus
/// directed (src, dst, label) edges over indices 0..n-1.
Pattern canonical_pattern(const std::vector<NodeLabel>& node_labels,
                          const std::vector<Pattern::PEdge>& edges);

/// Label- and direction-preserving edge-subgraph embedding test
/// (non-induced; node-injective).
bool contains(const Pattern& pattern, const LabeledDag& dag);

struct MinedPattern {
  Pattern pattern;
  long long count = 0;  // graphs containing the pattern, not embeddings
};

struct MineOptions {
  /// The fixed concatenation arcs are structural, not searched; they are
  /// excluded from pattern growth unless requested.
  bool include_concat = false;
};

/// All connected patterns with at most max_edges edges occurring in at
/// least a min_support fraction of corpus graphs, with graph-level
/// occurrence counts. Output is sorted by (edge count, code) and is
/// independent of corpus order.
std::vector<MinedPattern> mine_frequent(const std::vector<LabeledDag>& corpus,
                                        double min_support, int max_edges,
                                        const MineOptions& opts = {});

/// Number of corpus graphs containing the pattern.
long long count_containing(const Pattern& pattern, const std::vector<LabeledDag>& corpus);

/// DAG of exactly the operations whose |OI| meets the threshold, with
/// their endpoint nodes. May be disconnected or empty. Records must
/// cover the addressed cell.
LabeledDag important_subgraph(const Architecture& arch, const std::vector<OIRecord>& records,
                              double threshold, const SpaceSpec& spec,
                              CellKind kind = CellKind::normal);

/// R subgraphs of `dag`, each of exactly m distinct operation edges
/// sampled uniformly without replacement. Bit-reproducible for a fixed
/// generator state.
std::vector<LabeledDag> null_reference(const LabeledDag& dag, int m, Rng& rng, int repetitions);

struct SupportStats {
  Pattern pattern;
  long long count_target = 0;
  long long count_ref = 0;
  double support_target = 0.0;
  double support_ref = 0.0;  // un-floored
  double ratio = 0.0;
};

/// count_target / T over max(count_ref, 1) / ref_total. The 1-count
/// floor keeps rankings total when a pattern never occurs in the
/// reference.
SupportStats support_stats(Pattern pattern, long long count_target, long long target_total,
                           long long count_ref, long long ref_total);

/// Ranks mined target patterns by the ratio of their target support to
/// their support in the null-reference corpus (descending; ties by
/// target support, then code).
std::vector<SupportStats> ratio_rank(const std::vector<MinedPattern>& target,
                                     long long target_total,
                                     const std::vector<LabeledDag>& reference);

struct ResidualReport {
  bool present = false;
  bool via_in0 = false;
  bool via_in1 = false;
  int other_skips = 0;  // skip edges between intermediate nodes
};

/// ResNet-style residual link: a skip_connect edge originating at a
/// cell input. The strict variant additionally requires the sibling
/// in-edge of the same node to carry a convolution. DARTS cells.
ResidualReport has_residual_link(const Cell& cell, bool strict = false);

/// Human-readable edge list, e.g. "in0#0 -skip_connect-> inter#1".
std::string render_pattern(const Pattern& pattern);

}  // namespace cellscope
