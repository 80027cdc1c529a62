#include <doctest.h>

#include <algorithm>
#include <map>

#include "cellscope/errors.hpp"
#include "cellscope/motifs.hpp"
#include "cellscope/sampler.hpp"
#include "cellscope/surrogate.hpp"

#include "oracles.hpp"

using namespace cellscope;

namespace {

LabeledDag random_dag(Rng& rng, const SpaceSpec& spec, int max_edges = 8) {
  Architecture arch = sample(spec, {}, rng);
  LabeledDag full = to_dag(arch.normal, spec);
  int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_edges)));
  return null_reference(full, m, rng, 1).front();
}

Pattern single_edge_pattern(NodeLabel a, Primitive op, NodeLabel b) {
  return canonical_pattern({a, b}, {{0, 1, edge_label(op)}});
}

std::map<std::string, long long> mined_as_canonical(const std::vector<MinedPattern>& mined) {
  std::map<std::string, long long> out;
  for (const MinedPattern& m : mined) {
    out[oracles::perm_canonical(oracles::raw_from_pattern(m.pattern))] = m.count;
  }
  return out;
}

}  // namespace

TEST_CASE("canonical codes are isomorphism invariants") {
  // the same triangle built under three node orderings
  std::vector<NodeLabel> l1 = {NodeLabel::in0, NodeLabel::inter, NodeLabel::inter};
  std::vector<Pattern::PEdge> e1 = {{0, 1, edge_label(Primitive::skip_connect)},
                                    {0, 2, edge_label(Primitive::sep_conv_3x3)},
                                    {1, 2, edge_label(Primitive::sep_conv_5x5)}};
  std::vector<NodeLabel> l2 = {NodeLabel::inter, NodeLabel::in0, NodeLabel::inter};
  std::vector<Pattern::PEdge> e2 = {{1, 0, edge_label(Primitive::skip_connect)},
                                    {1, 2, edge_label(Primitive::sep_conv_3x3)},
                                    {0, 2, edge_label(Primitive::sep_conv_5x5)}};
  CHECK(canonical_pattern(l1, e1).code == canonical_pattern(l2, e2).code);

  SUBCASE("direction matters") {
    std::vector<Pattern::PEdge> reversed = {{1, 0, edge_label(Primitive::skip_connect)},
                                            {0, 2, edge_label(Primitive::sep_conv_3x3)},
                                            {1, 2, edge_label(Primitive::sep_conv_5x5)}};
    CHECK(canonical_pattern(l1, reversed).code != canonical_pattern(l1, e1).code);
  }
  SUBCASE("labels matter") {
    std::vector<NodeLabel> other = {NodeLabel::in1, NodeLabel::inter, NodeLabel::inter};
    CHECK(canonical_pattern(other, e1).code != canonical_pattern(l1, e1).code);
  }
  SUBCASE("disconnected patterns are rejected") {
    std::vector<NodeLabel> l = {NodeLabel::inter, NodeLabel::inter, NodeLabel::inter,
                                NodeLabel::inter};
    std::vector<Pattern::PEdge> e = {{0, 1, edge_label(Primitive::skip_connect)},
                                     {2, 3, edge_label(Primitive::skip_connect)}};
    CHECK_THROWS_AS(canonical_pattern(l, e), std::invalid_argument);
  }
  SUBCASE("random pattern pairs: equal code iff permutation-isomorphic") {
    SpaceSpec spec = SpaceSpec::darts();
    Rng rng(71);
    std::vector<Pattern> pats;
    for (int i = 0; i < 60; ++i) {
      LabeledDag d = random_dag(rng, spec, 4);
      oracles::RawGraph g = oracles::raw_from_dag(d);
      if (g.edges.empty()) continue;
      std::vector<int> all(g.edges.size());
      for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
      if (!oracles::subset_connected(g, all)) continue;
      std::vector<Pattern::PEdge> pe;
      for (auto [s, d2, l] : g.edges) pe.push_back({s, d2, l});
      pats.push_back(canonical_pattern(g.labels, pe));
    }
    for (std::size_t a = 0; a < pats.size(); ++a) {
      for (std::size_t b = a; b < pats.size(); ++b) {
        bool same_code = pats[a].code == pats[b].code;
        bool same_perm = oracles::perm_canonical(oracles::raw_from_pattern(pats[a])) ==
                         oracles::perm_canonical(oracles::raw_from_pattern(pats[b]));
        CHECK(same_code == same_perm);
      }
    }
  }
}

TEST_CASE("canonical codes on dense automorphic digraphs") {
  // single-label alphabets maximize automorphisms; codes must still be
  // exact isomorphism invariants
  Rng rng(131);
  EdgeLabel labels[2] = {edge_label(Primitive::sep_conv_3x3),
                         edge_label(Primitive::skip_connect)};
  std::vector<Pattern> pats;
  std::vector<oracles::RawGraph> raws;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 2 + static_cast<int>(rng.below(4));
    oracles::RawGraph g;
    for (int i = 0; i < n; ++i) g.labels.push_back(NodeLabel::inter);
    std::set<std::pair<int, int>> used;
    int edges = 1 + static_cast<int>(rng.below(5));
    for (int e = 0; e < edges; ++e) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (a == b || used.count({a, b}) || used.count({b, a})) continue;
      used.insert({a, b});
      g.edges.emplace_back(a, b, labels[rng.below(2)]);
    }
    if (g.edges.empty()) continue;
    // keep only nodes touched by edges, then require connectivity
    std::vector<int> idx(g.edges.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
    oracles::RawGraph sub = oracles::raw_subgraph(g, idx);
    std::vector<int> all(sub.edges.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    if (!oracles::subset_connected(sub, all)) continue;
    std::vector<Pattern::PEdge> pe;
    for (auto [s, d, l] : sub.edges) pe.push_back({s, d, l});
    pats.push_back(canonical_pattern(sub.labels, pe));
    raws.push_back(sub);
  }
  REQUIRE(pats.size() > 40);
  int collisions = 0;
  for (std::size_t a = 0; a < pats.size(); ++a) {
    for (std::size_t b = a + 1; b < pats.size(); ++b) {
      bool same_code = pats[a].code == pats[b].code;
      bool same_iso = oracles::perm_canonical(oracles::raw_from_pattern(pats[a])) ==
                      oracles::perm_canonical(oracles::raw_from_pattern(pats[b]));
      REQUIRE(same_code == same_iso);
      collisions += same_code;
    }
  }
  CHECK(collisions > 0);  // dense single-label graphs do repeat shapes

  SUBCASE("patterns embed into their own realization") {
    for (const Pattern& p : pats) {
      LabeledDag self;
      for (int i = 0; i < p.node_count(); ++i) {
        self.nodes.push_back({i, p.node_labels[static_cast<std::size_t>(i)]});
      }
      for (const auto& e : p.edges) self.arcs.push_back({e.src, e.dst, e.label});
      CHECK(contains(p, self));
    }
  }
}

TEST_CASE("miner equals brute force on NB201-shaped corpora") {
  // denser wiring than DARTS cells: up to all six pairwise edges
  SpaceSpec spec = SpaceSpec::nb201();
  Rng rng(137);
  for (int corpus_id = 0; corpus_id < 6; ++corpus_id) {
    std::vector<LabeledDag> corpus;
    for (int i = 0; i < 10; ++i) {
      corpus.push_back(to_dag(sample(spec, {}, rng).normal, spec));
    }
    for (double sigma : {0.2, 0.5}) {
      CAPTURE(corpus_id);
      auto mined = mine_frequent(corpus, sigma, 4);
      auto want = oracles::brute_force_frequent(corpus, sigma, 4);
      REQUIRE(mined_as_canonical(mined) == want);
    }
  }
}

TEST_CASE("embedding test agrees with the naive matcher") {
  SpaceSpec spec = SpaceSpec::darts();
  Rng rng(73);
  int positives = 0;
  for (int trial = 0; trial < 250; ++trial) {
    LabeledDag hay = random_dag(rng, spec);
    LabeledDag from = random_dag(rng, spec, 4);
    oracles::RawGraph g = oracles::raw_from_dag(from);
    if (g.edges.empty()) continue;
    std::vector<int> all(g.edges.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    if (!oracles::subset_connected(g, all)) continue;
    std::vector<Pattern::PEdge> pe;
    for (auto [s, d, l] : g.edges) pe.push_back({s, d, l});
    Pattern p = canonical_pattern(g.labels, pe);
    bool got = contains(p, hay);
    bool want = oracles::naive_contains(oracles::raw_from_pattern(p), hay);
    CHECK(got == want);
    positives += got;
  }
  CHECK(positives > 0);  // the comparison actually exercised both outcomes
}

TEST_CASE("embedding semantics") {
  SpaceSpec spec = SpaceSpec::darts();
  Cell cell({{0, 0, Primitive::skip_connect},
             {1, 0, Primitive::sep_conv_3x3},
             {0, 1, Primitive::sep_conv_3x3},
             {2, 1, Primitive::sep_conv_5x5},
             {1, 2, Primitive::dil_conv_3x3},
             {3, 2, Primitive::sep_conv_3x3},
             {2, 3, Primitive::max_pool_3x3},
             {4, 3, Primitive::sep_conv_5x5}});
  LabeledDag dag = to_dag(cell, spec);

  CHECK(contains(single_edge_pattern(NodeLabel::in0, Primitive::skip_connect, NodeLabel::inter), dag));
  // in1 must match exactly: the skip starts at in0, not in1
  CHECK(!contains(single_edge_pattern(NodeLabel::in1, Primitive::skip_connect, NodeLabel::inter), dag));
  // inter->inter edges: n0 -s5-> n1 exists
  CHECK(contains(single_edge_pattern(NodeLabel::inter, Primitive::sep_conv_5x5, NodeLabel::inter), dag));
  CHECK(!contains(single_edge_pattern(NodeLabel::inter, Primitive::avg_pool_3x3, NodeLabel::inter), dag));
  // direction preserved: the skip arc runs in0 -> inter, never the reverse
  CHECK(!contains(single_edge_pattern(NodeLabel::inter, Primitive::skip_connect, NodeLabel::in0), dag));

  SUBCASE("non-induced: extra arcs in the host are fine") {
    // two-edge fan into one intermediate node
    Pattern fan = canonical_pattern(
        {NodeLabel::in0, NodeLabel::in1, NodeLabel::inter},
        {{0, 2, edge_label(Primitive::skip_connect)}, {1, 2, edge_label(Primitive::sep_conv_3x3)}});
    CHECK(contains(fan, dag));
  }
}

TEST_CASE("important subgraphs") {
  SpaceSpec spec = SpaceSpec::darts();
  SyntheticSurrogate ev;

  SUBCASE("all below threshold gives an empty DAG") {
    ConstantSurrogate cev(0.8, spec);
    Rng rng(79);
    Architecture arch = sample(spec, {}, rng);
    auto records = compute_oi(arch, cev);
    LabeledDag g = important_subgraph(arch, records, 0.001, spec);
    CHECK(g.arcs.empty());
    CHECK(g.nodes.empty());
  }
  SUBCASE("residual pair only") {
    // Skip-constrained architecture evaluated with a huge threshold: only
    // hand-marked records keep edges, so mark the two residual skips.
    Rng rng(83);
    Architecture arch = sample(spec, constraints_for(SampleGroup::primskip), rng);
    auto records = compute_oi(arch, ev);
    for (OIRecord& r : records) {
      bool residual_slot = r.address.cell == CellKind::normal && r.address.dst == 0;
      r.oi = residual_slot ? 1.0 : 0.0;
    }
    LabeledDag g = important_subgraph(arch, records, 0.5, spec);
    CHECK(g.arcs.size() == 2);
    CHECK(g.nodes.size() == 3);
    for (const auto& a : g.arcs) CHECK(a.label == edge_label(Primitive::skip_connect));
  }
  SUBCASE("all important gives the full op-edge DAG") {
    Rng rng(89);
    Architecture arch = sample(spec, {}, rng);
    auto records = compute_oi(arch, ev);
    for (OIRecord& r : records) r.oi = 1.0;
    LabeledDag g = important_subgraph(arch, records, 0.5, spec);
    CHECK(g.arcs.size() == 8);
  }
  SUBCASE("missing records rejected") {
    Rng rng(97);
    Architecture arch = sample(spec, {}, rng);
    auto records = compute_oi(arch, ev);
    records.erase(records.begin());
    CHECK_THROWS_AS(important_subgraph(arch, records, 0.001, spec), DataError);
  }
}

TEST_CASE("null reference sampling") {
  SpaceSpec spec = SpaceSpec::darts();
  Rng seedrng(101);
  Architecture arch = sample(spec, {}, seedrng);
  LabeledDag full = to_dag(arch.normal, spec);

  SUBCASE("m equal to the op-edge count returns the full op set") {
    Rng rng(1);
    auto refs = null_reference(full, 8, rng, 3);
    REQUIRE(refs.size() == 3);
    for (const auto& r : refs) CHECK(r.op_edge_count() == 8);
  }
  SUBCASE("m = 0 gives empty subgraphs") {
    Rng rng(2);
    auto refs = null_reference(full, 0, rng, 2);
    for (const auto& r : refs) {
      CHECK(r.arcs.empty());
      CHECK(r.nodes.empty());
    }
  }
  SUBCASE("m too large is an error") {
    Rng rng(3);
    CHECK_THROWS_AS(null_reference(full, 9, rng, 1), std::invalid_argument);
  }
  SUBCASE("single-edge draws are uniform") {
    Rng rng(4);
    std::map<std::string, int> freq;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
      LabeledDag r = null_reference(full, 1, rng, 1).front();
      REQUIRE(r.arcs.size() == 1);
      freq[std::to_string(r.arcs[0].src) + ">" + std::to_string(r.arcs[0].dst)]++;
    }
    REQUIRE(freq.size() == 8);
    for (const auto& [k, n] : freq) {
      double f = static_cast<double>(n) / draws;
      CHECK(f >= 0.115);
      CHECK(f <= 0.135);
    }
  }
  SUBCASE("fixed seed is bit-reproducible") {
    Rng r1(42), r2(42);
    auto a = null_reference(full, 4, r1, 5);
    auto b = null_reference(full, 4, r2, 5);
    CHECK(a == b);
  }
  SUBCASE("concat arcs are never sampled") {
    Rng rng(5);
    for (const auto& r : null_reference(full, 8, rng, 4)) {
      for (const auto& a : r.arcs) CHECK(a.label != kConcatLabel);
    }
  }
}

TEST_CASE("mining on hand-built corpora") {
  auto mk = [](std::vector<Pattern::PEdge> edges, std::vector<NodeLabel> labels) {
    LabeledDag d;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      d.nodes.push_back({static_cast<int>(i), labels[i]});
    }
    for (const auto& e : edges) d.arcs.push_back({e.src, e.dst, e.label});
    return d;
  };
  EdgeLabel s3 = edge_label(Primitive::sep_conv_3x3);
  EdgeLabel skip = edge_label(Primitive::skip_connect);

  SUBCASE("three identical graphs at sigma = 1") {
    LabeledDag g = mk({{0, 2, skip}, {1, 2, s3}, {2, 3, s3}},
                      {NodeLabel::in0, NodeLabel::in1, NodeLabel::inter, NodeLabel::inter});
    std::vector<LabeledDag> corpus = {g, g, g};
    auto mined = mine_frequent(corpus, 1.0, 3);
    auto want = oracles::brute_force_frequent(corpus, 1.0, 3);
    auto got = mined_as_canonical(mined);
    CHECK(got == want);
    for (const auto& m : mined) CHECK(m.count == 3);
    CHECK(!mined.empty());
  }
  SUBCASE("support 2/3 pattern") {
    LabeledDag g1 = mk({{0, 1, skip}, {1, 2, s3}},
                       {NodeLabel::in0, NodeLabel::inter, NodeLabel::inter});
    LabeledDag g2 = mk({{0, 1, s3}}, {NodeLabel::in0, NodeLabel::inter});
    LabeledDag g3 = mk({{0, 1, skip}, {1, 2, s3}, {0, 2, s3}},
                       {NodeLabel::in0, NodeLabel::inter, NodeLabel::inter});
    std::vector<LabeledDag> corpus = {g1, g2, g3};
    auto mined = mine_frequent(corpus, 0.5, 2);
    // in0 -skip-> inter occurs in g1 and g3 only
    Pattern probe = single_edge_pattern(NodeLabel::in0, Primitive::skip_connect, NodeLabel::inter);
    bool found = false;
    for (const auto& m : mined) {
      if (m.pattern.code == probe.code) {
        found = true;
        CHECK(m.count == 2);
      }
    }
    CHECK(found);
    CHECK(mined_as_canonical(mined) == oracles::brute_force_frequent(corpus, 0.5, 2));
  }
  SUBCASE("empty corpus and bad sigma rejected") {
    CHECK_THROWS_AS(mine_frequent({}, 0.5, 3), std::invalid_argument);
    LabeledDag g = mk({{0, 1, s3}}, {NodeLabel::in0, NodeLabel::inter});
    CHECK_THROWS_AS(mine_frequent({g}, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(mine_frequent({g}, 1.5, 3), std::invalid_argument);
  }
}

TEST_CASE("miner equals brute-force enumeration on random corpora") {
  SpaceSpec spec = SpaceSpec::darts();
  Rng rng(103);
  for (int corpus_id = 0; corpus_id < 10; ++corpus_id) {
    std::vector<LabeledDag> corpus;
    for (int i = 0; i < 12; ++i) corpus.push_back(random_dag(rng, spec));
    for (double sigma : {0.2, 0.5}) {
      CAPTURE(corpus_id);
      CAPTURE(sigma);
      auto mined = mine_frequent(corpus, sigma, 4);
      auto want = oracles::brute_force_frequent(corpus, sigma, 4);
      REQUIRE(mined_as_canonical(mined) == want);
    }
  }
}

TEST_CASE("mining is independent of corpus order and anti-monotone") {
  SpaceSpec spec = SpaceSpec::darts();
  Rng rng(107);
  std::vector<LabeledDag> corpus;
  for (int i = 0; i < 15; ++i) corpus.push_back(random_dag(rng, spec));
  auto mined = mine_frequent(corpus, 0.2, 4);

  SUBCASE("order independence") {
    std::vector<LabeledDag> shuffled = corpus;
    std::reverse(shuffled.begin(), shuffled.end());
    auto mined2 = mine_frequent(shuffled, 0.2, 4);
    REQUIRE(mined.size() == mined2.size());
    for (std::size_t i = 0; i < mined.size(); ++i) {
      CHECK(mined[i].pattern.code == mined2[i].pattern.code);
      CHECK(mined[i].count == mined2[i].count);
    }
  }
  SUBCASE("anti-monotonicity") {
    std::map<std::string, long long> by_code;
    for (const auto& m : mined) by_code[m.pattern.code] = m.count;
    for (const auto& m : mined) {
      if (m.pattern.edge_count() < 2) continue;
      for (std::size_t drop = 0; drop < m.pattern.edges.size(); ++drop) {
        oracles::RawGraph g = oracles::raw_from_pattern(m.pattern);
        g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(drop));
        std::vector<int> rest(g.edges.size());
        for (std::size_t k = 0; k < rest.size(); ++k) rest[k] = static_cast<int>(k);
        if (!oracles::subset_connected(g, rest)) continue;
        oracles::RawGraph sub = oracles::raw_subgraph(g, rest);
        std::vector<Pattern::PEdge> pe;
        for (auto [s, d, l] : sub.edges) pe.push_back({s, d, l});
        Pattern p = canonical_pattern(sub.labels, pe);
        REQUIRE(by_code.count(p.code));
        CHECK(by_code[p.code] >= m.count);
      }
    }
  }
}

TEST_CASE("support statistics and ratio ranking") {
  Pattern p = single_edge_pattern(NodeLabel::in0, Primitive::skip_connect, NodeLabel::inter);

  SUBCASE("documented support table rows") {
    SupportStats row2 = support_stats(p, 174, 2589, 2, 2589);
    CHECK(row2.support_target == doctest::Approx(0.0672).epsilon(1e-3));
    CHECK(row2.support_ref == doctest::Approx(0.000772).epsilon(1e-3));
    CHECK(row2.ratio == doctest::Approx(87.0).epsilon(1e-9));
    CHECK(std::abs(0.0672 / 0.000772 - 87.0) <= 0.1);

    SupportStats row3 = support_stats(p, 150, 2589, 2, 2589);
    CHECK(row3.support_target == doctest::Approx(0.0579).epsilon(1e-3));
    CHECK(row3.ratio == doctest::Approx(75.0).epsilon(1e-9));
    CHECK(std::abs(0.0579 / 0.000772 - 75.0) <= 0.1);

    SupportStats one = support_stats(p, 1, 2589, 1, 2589);
    CHECK(one.support_ref == doctest::Approx(0.000386).epsilon(1e-3));
  }
  SUBCASE("zero reference count is floored at one occurrence") {
    SupportStats s = support_stats(p, 40, 100, 0, 100);
    CHECK(s.support_ref == 0.0);
    CHECK(s.ratio == doctest::Approx(40.0));
  }
  SUBCASE("ranking is by descending ratio") {
    SpaceSpec spec = SpaceSpec::darts();
    Rng rng(109);
    std::vector<LabeledDag> target, reference;
    for (int i = 0; i < 12; ++i) {
      target.push_back(random_dag(rng, spec));
      reference.push_back(random_dag(rng, spec));
    }
    auto mined = mine_frequent(target, 0.25, 3);
    auto ranked = ratio_rank(mined, static_cast<long long>(target.size()), reference);
    REQUIRE(ranked.size() == mined.size());
    for (std::size_t i = 1; i < ranked.size(); ++i) {
      CHECK(ranked[i - 1].ratio >= ranked[i].ratio);
    }
    for (const auto& s : ranked) {
      CHECK(s.count_ref == count_containing(s.pattern, reference));
      CHECK(s.support_target ==
            doctest::Approx(static_cast<double>(s.count_target) / 12.0));
    }
  }
}

TEST_CASE("residual link detection") {
  SUBCASE("skip-constrained cell") {
    Rng rng(113);
    Architecture arch = sample(SpaceSpec::darts(), constraints_for(SampleGroup::skip), rng);
    ResidualReport r = has_residual_link(arch.normal);
    CHECK(r.present);
    CHECK(r.via_in0);
    CHECK(r.via_in1);
  }
  SUBCASE("no skips at all") {
    Cell cell({{0, 0, Primitive::sep_conv_3x3},
               {1, 0, Primitive::sep_conv_5x5},
               {0, 1, Primitive::dil_conv_3x3},
               {2, 1, Primitive::max_pool_3x3},
               {1, 2, Primitive::avg_pool_3x3},
               {3, 2, Primitive::sep_conv_3x3},
               {0, 3, Primitive::sep_conv_3x3},
               {4, 3, Primitive::dil_conv_5x5}});
    ResidualReport r = has_residual_link(cell);
    CHECK(!r.present);
    CHECK(r.other_skips == 0);
  }
  SUBCASE("inter-to-inter skips are counted separately") {
    Cell cell({{0, 0, Primitive::sep_conv_3x3},
               {1, 0, Primitive::sep_conv_5x5},
               {0, 1, Primitive::dil_conv_3x3},
               {2, 1, Primitive::skip_connect},
               {1, 2, Primitive::avg_pool_3x3},
               {3, 2, Primitive::skip_connect},
               {0, 3, Primitive::sep_conv_3x3},
               {4, 3, Primitive::dil_conv_5x5}});
    ResidualReport r = has_residual_link(cell);
    CHECK(!r.present);
    CHECK(r.other_skips == 2);
  }
  SUBCASE("strict variant needs a convolution sibling") {
    Cell loose({{0, 0, Primitive::skip_connect},
                {1, 0, Primitive::max_pool_3x3},
                {0, 1, Primitive::sep_conv_3x3},
                {2, 1, Primitive::sep_conv_5x5},
                {1, 2, Primitive::sep_conv_3x3},
                {3, 2, Primitive::sep_conv_3x3},
                {2, 3, Primitive::sep_conv_3x3},
                {4, 3, Primitive::sep_conv_3x3}});
    CHECK(has_residual_link(loose).present);
    CHECK(!has_residual_link(loose, true).present);
    Cell strict_ok = loose.with_op(0, 1, Primitive::sep_conv_3x3);
    CHECK(has_residual_link(strict_ok, true).present);
  }
}

TEST_CASE("pattern rendering names the endpoints") {
  Pattern p = single_edge_pattern(NodeLabel::in0, Primitive::skip_connect, NodeLabel::inter);
  std::string s = render_pattern(p);
  CHECK(s.find("in0") != std::string::npos);
  CHECK(s.find("skip_connect") != std::string::npos);
  CHECK(s.find("inter") != std::string::npos);
}
