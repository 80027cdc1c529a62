#include <doctest.h>

#include "cellscope/cell.hpp"
#include "cellscope/dag.hpp"
#include "cellscope/errors.hpp"
#include "cellscope/genotype.hpp"
#include "cellscope/rng.hpp"
#include "cellscope/sampler.hpp"

#include "oracles.hpp"

using namespace cellscope;

namespace {

const char* kSampleGenotype =
    "Genotype(normal=[('skip_connect', 0), ('skip_connect', 1), ('sep_conv_3x3', 0), "
    "('sep_conv_3x3', 1), ('sep_conv_3x3', 1), ('dil_conv_3x3', 2), ('max_pool_3x3', 0), "
    "('skip_connect', 4)], normal_concat=[2, 3, 4, 5], reduce=[('max_pool_3x3', 0), "
    "('max_pool_3x3', 1), ('max_pool_3x3', 1), ('skip_connect', 2), ('max_pool_3x3', 0), "
    "('skip_connect', 2), ('max_pool_3x3', 1), ('skip_connect', 2)], "
    "reduce_concat=[2, 3, 4, 5])";

}  // namespace

TEST_CASE("genotype parsing maps pairs onto node in-edges") {
  SpaceSpec spec = SpaceSpec::darts();
  Architecture arch = parse_genotype(kSampleGenotype, spec);
  auto in0 = arch.normal.in_edges(0);
  REQUIRE(in0.size() == 2);
  CHECK(in0[0] == Edge{0, 0, Primitive::skip_connect});
  CHECK(in0[1] == Edge{1, 0, Primitive::skip_connect});
  CHECK(validate(arch, spec).ok());
}

TEST_CASE("parser accepts unsorted pairs and odd whitespace; serializer re-canonicalizes") {
  SpaceSpec spec = SpaceSpec::darts();
  std::string messy =
      "Genotype( normal = [ ('skip_connect',1),('skip_connect', 0), ('sep_conv_3x3',1), "
      "(\"sep_conv_3x3\", 0),('sep_conv_3x3', 1), ('dil_conv_3x3', 2),('max_pool_3x3', 0), "
      "('skip_connect', 4) ], normal_concat=[2,3, 4,5], reduce=[('max_pool_3x3', 0), "
      "('max_pool_3x3', 1),('skip_connect', 2), ('max_pool_3x3', 1), ('max_pool_3x3', 0), "
      "('skip_connect', 2), ('skip_connect', 2), ('max_pool_3x3', 1)],reduce_concat=[2,3,4,5])";
  Architecture a = parse_genotype(messy, spec);
  Architecture b = parse_genotype(kSampleGenotype, spec);
  CHECK(a == b);
  CHECK(serialize_genotype(a, spec) == kSampleGenotype);
}

TEST_CASE("parse/serialize round trips") {
  SpaceSpec spec = SpaceSpec::darts();
  // serialize . parse on canonical text
  CHECK(serialize_genotype(parse_genotype(kSampleGenotype, spec), spec) == kSampleGenotype);
  // parse . serialize on random architectures
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Architecture arch = sample(spec, {}, rng);
    CHECK(parse_genotype(serialize_genotype(arch, spec), spec) == arch);
  }
}

TEST_CASE("parser reports structural errors") {
  SpaceSpec spec = SpaceSpec::darts();
  SUBCASE("seven pairs") {
    std::string text =
        "Genotype(normal=[('skip_connect', 0), ('skip_connect', 1), ('sep_conv_3x3', 0), "
        "('sep_conv_3x3', 1), ('sep_conv_3x3', 1), ('dil_conv_3x3', 2), ('max_pool_3x3', 0)], "
        "normal_concat=[2, 3, 4, 5], reduce=[('max_pool_3x3', 0), ('max_pool_3x3', 1), "
        "('skip_connect', 2), ('max_pool_3x3', 1), ('max_pool_3x3', 0), ('skip_connect', 2), "
        "('skip_connect', 2), ('max_pool_3x3', 1)], reduce_concat=[2, 3, 4, 5])";
    CHECK_THROWS_WITH_AS(parse_genotype(text, spec), doctest::Contains("wrong edge count"),
                         ParseError);
  }
  SUBCASE("unknown primitive") {
    std::string text = kSampleGenotype;
    text.replace(text.find("skip_connect"), 12, "skip_connedt");
    CHECK_THROWS_AS(parse_genotype(text, spec), ParseError);
  }
  SUBCASE("bad source index") {
    std::string text = kSampleGenotype;
    text.replace(text.find("('skip_connect', 0)"), 19, "('skip_connect', 3)");
    CHECK_THROWS_WITH_AS(parse_genotype(text, spec), doctest::Contains("bad source index"),
                         ParseError);
  }
  SUBCASE("duplicate sources") {
    std::string text = kSampleGenotype;
    text.replace(text.find("('skip_connect', 1)"), 19, "('skip_connect', 0)");
    CHECK_THROWS_WITH_AS(parse_genotype(text, spec), doctest::Contains("duplicate sources"),
                         ParseError);
  }
  SUBCASE("syntax error position") {
    try {
      parse_genotype("Genotype(normal=((", spec);
      FAIL("expected throw");
    } catch (const ParseError& e) {
      CHECK(e.position() == 16);
    }
  }
}

TEST_CASE("NB201 string format") {
  SpaceSpec spec = SpaceSpec::nb201();
  std::string text =
      "|nor_conv_3x3~0|+|skip_connect~0|nor_conv_1x1~1|+|skip_connect~0|none~1|avg_pool_3x3~2|";
  Architecture arch = parse_genotype(text, spec);
  CHECK(arch.normal.edges().size() == 6);
  CHECK(!arch.reduce.has_value());
  CHECK(validate(arch, spec).ok());
  CHECK(serialize_genotype(arch, spec) == text);
  CHECK(arch.normal.edge_at(3, 1).op == Primitive::none);

  SUBCASE("wrong source index") {
    std::string bad =
        "|nor_conv_3x3~1|+|skip_connect~0|nor_conv_1x1~1|+|skip_connect~0|none~1|avg_pool_3x3~2|";
    CHECK_THROWS_WITH_AS(parse_genotype(bad, spec), doctest::Contains("bad source index"),
                         ParseError);
  }
  SUBCASE("unknown label for the space") {
    std::string bad =
        "|sep_conv_3x3~0|+|skip_connect~0|nor_conv_1x1~1|+|skip_connect~0|none~1|avg_pool_3x3~2|";
    CHECK_THROWS_WITH_AS(parse_genotype(bad, spec), doctest::Contains("unknown primitive"),
                         ParseError);
  }
  SUBCASE("missing segment") {
    std::string bad = "|nor_conv_3x3~0|+|skip_connect~0|nor_conv_1x1~1|";
    CHECK_THROWS_AS(parse_genotype(bad, spec), ParseError);
  }
}

TEST_CASE("validate flags constraint violations without throwing") {
  SpaceSpec spec = SpaceSpec::darts();
  Architecture good = parse_genotype(kSampleGenotype, spec);
  CHECK(validate(good.normal, spec).ok());

  SUBCASE("duplicate sources") {
    std::vector<Edge> edges = good.normal.edges();
    // both in-edges of node 2 from source 0
    for (Edge& e : edges) {
      if (e.dst == 2) e.src = 0;
    }
    ValidationReport r = validate(Cell(edges), spec);
    CHECK(!r.ok());
    bool found = false;
    for (const auto& v : r.violations) {
      if (v.code == "duplicate sources") found = true;
    }
    CHECK(found);
  }
  SUBCASE("reserved label") {
    Cell zeroed = good.normal.with_op(0, 0, Primitive::zero);
    ValidationReport r = validate(zeroed, spec);
    REQUIRE(!r.ok());
    CHECK(r.violations[0].code == "reserved label");
  }
}

TEST_CASE("space cardinality closed forms") {
  Cardinality darts = space_cardinality(SpaceSpec::darts());
  CHECK(u128_to_string(darts.cells) == "1037664180");
  // squared count consistent with ~1.08e18 architectures
  unsigned __int128 lo = static_cast<unsigned __int128>(1000000000) * 1000000000;
  unsigned __int128 hi = static_cast<unsigned __int128>(1200000000) * 1000000000;
  CHECK(darts.architectures >= lo);
  CHECK(darts.architectures <= hi);

  Cardinality nb201 = space_cardinality(SpaceSpec::nb201());
  CHECK(u128_to_string(nb201.cells) == "15625");

  SpaceSpec one = SpaceSpec::darts().with_primitives({Primitive::sep_conv_3x3});
  CHECK(u128_to_string(space_cardinality(one).cells) == "180");
}

TEST_CASE("cardinality matches exhaustive enumeration on reduced primitive sets") {
  for (int k : {1, 2}) {
    std::vector<Primitive> pool = {Primitive::sep_conv_3x3, Primitive::sep_conv_5x5};
    pool.resize(static_cast<std::size_t>(k));
    SpaceSpec spec = SpaceSpec::darts().with_primitives(pool);

    std::set<std::string> seen;
    // enumerate wiring per node (source pairs) and primitive choices
    std::vector<std::vector<std::pair<int, int>>> node_pairs;
    for (int t = 0; t < 4; ++t) {
      std::vector<std::pair<int, int>> ps;
      for (int i = 0; i < t + 2; ++i) {
        for (int j = i + 1; j < t + 2; ++j) ps.emplace_back(i, j);
      }
      node_pairs.push_back(ps);
    }
    std::vector<std::size_t> wiring(4, 0);
    std::function<void(int)> walk_wiring = [&](int t) {
      if (t == 4) {
        int ops = 8;
        std::vector<int> choice(static_cast<std::size_t>(ops), 0);
        std::function<void(int)> walk_ops = [&](int o) {
          if (o == ops) {
            std::vector<Edge> edges;
            for (int node = 0; node < 4; ++node) {
              auto [a, b] = node_pairs[static_cast<std::size_t>(node)][wiring[static_cast<std::size_t>(node)]];
              edges.push_back({a, node, pool[static_cast<std::size_t>(choice[static_cast<std::size_t>(2 * node)])]});
              edges.push_back({b, node, pool[static_cast<std::size_t>(choice[static_cast<std::size_t>(2 * node + 1)])]});
            }
            seen.insert(canonical_form(Cell(edges)));
            return;
          }
          for (int c = 0; c < k; ++c) {
            choice[static_cast<std::size_t>(o)] = c;
            walk_ops(o + 1);
          }
        };
        walk_ops(0);
        return;
      }
      for (std::size_t w = 0; w < node_pairs[static_cast<std::size_t>(t)].size(); ++w) {
        wiring[static_cast<std::size_t>(t)] = w;
        walk_wiring(t + 1);
      }
    };
    walk_wiring(0);
    CHECK(u128_to_string(space_cardinality(spec).cells) == std::to_string(seen.size()));
  }
}

TEST_CASE("canonical_form is invariant exactly under within-node reordering") {
  SpaceSpec spec = SpaceSpec::darts();
  Architecture arch = parse_genotype(kSampleGenotype, spec);

  SUBCASE("swapped listing of a node's edges") {
    std::vector<Edge> edges = arch.normal.edges();
    std::swap(edges[0], edges[1]);
    std::swap(edges[4], edges[5]);
    CHECK(canonical_form(Cell(edges)) == canonical_form(arch.normal));
  }
  SUBCASE("one primitive apart") {
    Cell other = arch.normal.with_op(1, 0, Primitive::avg_pool_3x3);
    CHECK(canonical_form(other) != canonical_form(arch.normal));
  }
  SUBCASE("collision iff equal, over random cells") {
    Rng rng(3);
    std::vector<Cell> cells;
    for (int i = 0; i < 1000; ++i) cells.push_back(sample(spec, {}, rng).normal);
    for (std::size_t a = 0; a < cells.size(); ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        bool same_code = canonical_form(cells[a]) == canonical_form(cells[b]);
        CHECK(same_code == (cells[a] == cells[b]));
      }
    }
  }
}

TEST_CASE("to_dag shape") {
  SpaceSpec spec = SpaceSpec::darts();
  Architecture arch = parse_genotype(kSampleGenotype, spec);

  LabeledDag g = to_dag(arch.normal, spec);
  CHECK(g.nodes.size() == 7);  // 2 inputs + 4 intermediates + out
  CHECK(g.arcs.size() == 12);  // 8 ops + 4 concat
  CHECK(g.op_edge_count() == 8);

  SUBCASE("empty subset") {
    LabeledDag empty = to_dag_subset(arch.normal, spec, {});
    CHECK(empty.arcs.empty());
    CHECK(empty.nodes.empty());
  }
  SUBCASE("hand-built 3-edge subset keeps distinguished input labels") {
    Cell cell({{0, 0, Primitive::skip_connect},
               {1, 0, Primitive::skip_connect},
               {0, 1, Primitive::dil_conv_5x5},
               {2, 1, Primitive::sep_conv_3x3}});
    LabeledDag sub = to_dag_subset(cell, spec, {0, 1, 3});
    CHECK(sub.arcs.size() == 3);
    REQUIRE(sub.nodes.size() == 4);  // in0, in1, n0, n1
    int in_labels = 0;
    for (const auto& n : sub.nodes) {
      if (n.label == NodeLabel::in0 || n.label == NodeLabel::in1) ++in_labels;
    }
    CHECK(in_labels == 2);
  }
}

TEST_CASE("sampled architectures always validate") {
  SpaceSpec darts = SpaceSpec::darts();
  SpaceSpec nb201 = SpaceSpec::nb201();
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    CHECK(validate(sample(darts, {}, rng), darts).ok());
    CHECK(validate(sample(nb201, {}, rng), nb201).ok());
  }
}
