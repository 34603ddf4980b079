#include <doctest.h>

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "fcc/few_clusters.hpp"
#include "fcc/gadgets.hpp"
#include "fcc/oracle.hpp"
#include "fcc/solvers_linear.hpp"

using namespace fcc;

namespace {

template <class F>
Errc thrown_code(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an fcc::Error");
  return Errc::ParseError;
}

int tree_diameter(const ColoredForest& f) {
  auto far0 = fcc::detail::bfs_farthest(f, 0);
  return fcc::detail::bfs_farthest(f, far0.first).second;
}

std::vector<int> degrees(const ColoredForest& f) {
  std::vector<int> deg(f.n, 0);
  for (auto [u, v] : f.edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

}  // namespace

TEST_CASE("three-partition specs: malformed inputs are rejected") {
  // Wrong list length.
  CHECK(thrown_code([] {
          validate_three_partition({6, {2, 2, 2, 2}});
        }) == Errc::BadSpec);
  CHECK(thrown_code([] { validate_three_partition({6, {}}); }) == Errc::BadSpec);
  // Non-positive target.
  CHECK(thrown_code([] { validate_three_partition({0, {0, 0, 0}}); }) == Errc::BadSpec);
  // Sum mismatch.
  CHECK(thrown_code([] { validate_three_partition({6, {2, 2, 3}}); }) == Errc::BadSpec);
  // Bounds: every number must lie strictly between B/4 and B/2.  The numbers
  // here sum correctly but 2 fails 4*2 > 8, so groups of other sizes could
  // reach the target and the reduction's counting argument breaks.
  CHECK(thrown_code([] {
          validate_three_partition({8, {3, 3, 3, 3, 2, 2}});
        }) == Errc::BadSpec);
  // Upper bound: 2*3 >= 6.
  CHECK(thrown_code([] { validate_three_partition({6, {3, 2, 1}}); }) == Errc::BadSpec);
  // Valid specs pass.
  CHECK_NOTHROW(validate_three_partition({6, {2, 2, 2}}));
  CHECK_NOTHROW(validate_three_partition({13, {5, 4, 4, 5, 4, 4}}));
}

TEST_CASE("three-partition decision: exhaustive grouping") {
  auto one = three_partition_triples({6, {2, 2, 2}});
  REQUIRE(one.has_value());
  REQUIRE(one->size() == 1);
  CHECK((*one)[0] == std::array<int, 3>{0, 1, 2});

  auto yes = three_partition_triples({13, {5, 4, 4, 5, 4, 4}});
  REQUIRE(yes.has_value());
  REQUIRE(yes->size() == 2);
  std::vector<bool> seen(6, false);
  for (const auto& t : *yes) {
    long long sum = 0;
    for (int idx : t) {
      CHECK(!seen[idx]);
      seen[idx] = true;
      sum += std::vector<long long>{5, 4, 4, 5, 4, 4}[idx];
    }
    CHECK(sum == 13);
  }

  // 6 pairs with any 4 sum to 14, without it to 12: no triple reaches 13.
  CHECK(!three_partition_triples({13, {6, 4, 4, 4, 4, 4}}).has_value());
}

TEST_CASE("forest gadget: layout, threshold, and optimality at p = 1") {
  // Three paths of 2 red vertices plus one isolated blue: n = 7, ratio 1:6.
  GadgetInstance g = gen_forest_gadget({6, {2, 2, 2}});
  CHECK(g.forest.n == 7);
  CHECK(g.forest.k == 2);
  CHECK(g.forest.color_count == std::vector<long long>{6, 1});
  CHECK(g.forest.m() == 3);  // p(B-3) edges
  CHECK(g.threshold == 18);  // p*B(B+1)/2 - p(B-3)
  REQUIRE(g.is_yes.has_value());
  CHECK(*g.is_yes);
  REQUIRE(g.witness.has_value());
  CHECK(is_fair(g.forest, *g.witness));
  Cost wc = cc_cost(g.forest, *g.witness);
  CHECK(wc.chi == 0);  // yes-groupings cut nothing
  CHECK(wc.total == 18);
  CHECK(brute_force_exact(g.forest).cost.total == 18);

  // Uneven numbers: trees of 3, 3, and 4 vertices, still one cluster.
  GadgetInstance h = gen_forest_gadget({10, {3, 3, 4}});
  CHECK(h.forest.n == 11);
  CHECK(h.threshold == 48);
  CHECK(cc_cost(h.forest, *h.witness).total == 48);
  CHECK(brute_force_exact(h.forest).cost.total == 48);
}

TEST_CASE("forest gadget: every tree shape reaches the threshold") {
  ThreePartitionSpec spec{13, {5, 4, 4, 5, 4, 4}};
  for (TreeShape shape : {TreeShape::path, TreeShape::star, TreeShape::caterpillar}) {
    GadgetInstance g = gen_forest_gadget(spec, shape);
    CHECK(g.forest.n == 28);
    CHECK(g.forest.m() == 20);  // edge count is shape-independent
    CHECK(g.threshold == 162);
    REQUIRE(g.is_yes.has_value());
    CHECK(*g.is_yes);
    REQUIRE(g.witness.has_value());
    CHECK(is_fair(g.forest, *g.witness));
    CHECK(cc_cost(g.forest, *g.witness).total == 162);
    // Independent exact solver agrees: the threshold is the optimum.
    CHECK(solve_one_c(g.forest).cost.total == 162);
  }
}

TEST_CASE("forest gadget: no-instances cost strictly more than the threshold") {
  // Valid numbers with no grouping: any triple holding the 6 sums to 14.
  GadgetInstance g = gen_forest_gadget({13, {6, 4, 4, 4, 4, 4}});
  REQUIRE(g.is_yes.has_value());
  CHECK(!*g.is_yes);
  CHECK(!g.witness.has_value());
  CHECK(g.threshold == 162);
  CHECK(solve_one_c(g.forest).cost.total > 162);
}

TEST_CASE("forest gadget: undecided sizes still carry the threshold") {
  // p = 5 exceeds the exhaustive-decision ceiling; the instance is emitted
  // with its threshold but no label and no witness.
  std::vector<long long> a(15, 3);
  GadgetInstance g = gen_forest_gadget({9, a});
  CHECK(g.forest.n == 50);
  CHECK(g.threshold == 195);
  CHECK(!g.is_yes.has_value());
  CHECK(!g.witness.has_value());
}

TEST_CASE("diameter-4 gadget: a single tree of diameter four") {
  GadgetInstance g = gen_diam4_gadget({6, {2, 2, 2, 2, 2, 2}});
  CHECK(g.forest.n == 14);
  CHECK(g.forest.m() == 13);  // single tree
  CHECK(tree_diameter(g.forest) == 4);
  CHECK(g.threshold == 37);  // p*B(B-1)/2 + 7(p-1)
  REQUIRE(g.is_yes.has_value());
  CHECK(*g.is_yes);
  REQUIRE(g.witness.has_value());
  CHECK(is_fair(g.forest, *g.witness));
  Cost wc = cc_cost(g.forest, *g.witness);
  CHECK(wc.chi == 4);  // 4(p-1): the stray blue leaf plus three star links
  CHECK(wc.total == 37);
  CHECK(solve_one_c(g.forest).cost.total == 37);

  // p = 1: the whole tree is the one cluster.
  GadgetInstance h = gen_diam4_gadget({6, {2, 2, 2}});
  CHECK(h.forest.n == 7);
  CHECK(tree_diameter(h.forest) == 4);
  CHECK(h.threshold == 15);
  CHECK(cc_cost(h.forest, *h.witness).total == 15);
  CHECK(brute_force_exact(h.forest).cost.total == 15);

  GadgetInstance u = gen_diam4_gadget({10, {3, 3, 4}});
  CHECK(u.threshold == 45);
  CHECK(brute_force_exact(u.forest).cost.total == 45);
}

TEST_CASE("diameter-4 gadget: yes meets the threshold, no exceeds it") {
  GadgetInstance yes = gen_diam4_gadget({13, {5, 4, 4, 5, 4, 4}});
  CHECK(yes.threshold == 163);
  REQUIRE(yes.is_yes.has_value());
  CHECK(*yes.is_yes);
  CHECK(cc_cost(yes.forest, *yes.witness).total == 163);
  CHECK(solve_one_c(yes.forest).cost.total == 163);

  GadgetInstance no = gen_diam4_gadget({13, {6, 4, 4, 4, 4, 4}});
  REQUIRE(no.is_yes.has_value());
  CHECK(!*no.is_yes);
  CHECK(!no.witness.has_value());
  CHECK(solve_one_c(no.forest).cost.total > 163);
}

TEST_CASE("degree-5 gadget: bounded degree, single tree, optimal witness") {
  GadgetInstance g = gen_deg5_gadget({12, {4, 4, 4}});
  CHECK(g.forest.n == 52);  // 3 gadgets of a_i + B vertices plus 4p blues
  CHECK(g.forest.m() == 51);
  CHECK(g.forest.color_count == std::vector<long long>{48, 4});
  CHECK(derive_color_spec(g.forest).d == 13);

  std::vector<int> deg = degrees(g.forest);
  CHECK(*std::max_element(deg.begin(), deg.end()) == 5);

  CHECK(g.threshold == 277);  // 2p(B+1)(B-2) + 20p - 3
  REQUIRE(g.is_yes.has_value());
  CHECK(*g.is_yes);
  REQUIRE(g.witness.has_value());
  CHECK(is_fair(g.forest, *g.witness));
  Cost wc = cc_cost(g.forest, *g.witness);
  CHECK(wc.chi == 8);  // 10p - 2 cut edges: arm links, chain links, blue links
  CHECK(wc.total == 277);

  // B must be divisible by 4 so the arm paths have integer lengths.
  CHECK(thrown_code([] { gen_deg5_gadget({10, {3, 3, 4}}); }) == Errc::BadSpec);
}

TEST_CASE("paintshop words: one color per symbol, two fair clusters") {
  GadgetInstance g = gen_paintshop_path("abab");
  CHECK(g.forest.n == 4);
  CHECK(g.forest.color == std::vector<int>{0, 1, 0, 1});
  CHECK(g.forest.m() == 3);
  CHECK(!g.threshold.has_value());
  CHECK(!g.is_yes.has_value());
  CHECK(brute_force_exact(g.forest).cost.total == 1);

  CHECK(brute_force_exact(gen_paintshop_path("aabb").forest).cost.total == 3);
  CHECK(brute_force_exact(gen_paintshop_path("abba").forest).cost.total == 1);
  CHECK(brute_force_exact(gen_paintshop_path("abcabc").forest).cost.total == 3);

  // A single doubled symbol builds a valid path, but one color admits no
  // fair ratio, so every solver and the oracle refuse it.
  GadgetInstance one = gen_paintshop_path("aa");
  CHECK(one.forest.n == 2);
  CHECK(one.forest.k == 1);
  CHECK(thrown_code([&] { brute_force_exact(one.forest); }) == Errc::UnsupportedInstance);

  CHECK(thrown_code([] { gen_paintshop_path(""); }) == Errc::BadWord);
  CHECK(thrown_code([] { gen_paintshop_path("aba"); }) == Errc::BadWord);
  CHECK(thrown_code([] { gen_paintshop_path("abca"); }) == Errc::BadWord);
  CHECK(thrown_code([] { gen_paintshop_path("aaaa"); }) == Errc::BadWord);
}

TEST_CASE("random forests: exact color counts, shapes, determinism") {
  ColoredForest f = gen_random_forest(12, {1, 3}, RandomShape::uniform, 5);
  CHECK(f.n == 12);
  CHECK(f.color_count == std::vector<long long>{3, 9});
  CHECK(f.m() <= 11);

  // Identical inputs give identical forests.
  ColoredForest again = gen_random_forest(12, {1, 3}, RandomShape::uniform, 5);
  CHECK(f.color == again.color);
  CHECK(f.edges == again.edges);

  // Different seeds give different forests (frozen for these seeds).
  ColoredForest other = gen_random_forest(12, {1, 3}, RandomShape::uniform, 6);
  CHECK((f.color != other.color || f.edges != other.edges));

  ColoredForest p = gen_random_forest(6, {1, 1}, RandomShape::path, 0);
  CHECK(p.m() == 5);
  for (int v = 1; v < 6; ++v) CHECK(p.edges[v - 1] == std::pair<int, int>{v - 1, v});

  ColoredForest s = gen_random_forest(8, {1, 1}, RandomShape::star, 3);
  CHECK(s.m() == 7);
  for (auto [u, v] : s.edges) CHECK(u == 0);

  CHECK(thrown_code([] {
          gen_random_forest(10, {1, 3}, RandomShape::uniform, 0);
        }) == Errc::InfeasibleRatio);
  CHECK(thrown_code([] {
          gen_random_forest(0, {1, 1}, RandomShape::uniform, 0);
        }) == Errc::InfeasibleRatio);
  CHECK(thrown_code([] {
          gen_random_forest(6, {}, RandomShape::uniform, 0);
        }) == Errc::InfeasibleRatio);
  CHECK(thrown_code([] {
          gen_random_forest(6, {1, 0}, RandomShape::uniform, 0);
        }) == Errc::InfeasibleRatio);
}

TEST_CASE("gadget generators are pure functions of their spec") {
  GadgetInstance a = gen_deg5_gadget({12, {4, 4, 4}});
  GadgetInstance b = gen_deg5_gadget({12, {4, 4, 4}});
  CHECK(a.forest.color == b.forest.color);
  CHECK(a.forest.edges == b.forest.edges);
  CHECK(a.witness == b.witness);

  GadgetInstance c = gen_forest_gadget({6, {2, 2, 2}}, TreeShape::caterpillar);
  GadgetInstance d = gen_forest_gadget({6, {2, 2, 2}}, TreeShape::caterpillar);
  CHECK(c.forest.edges == d.forest.edges);
  CHECK(c.witness == d.witness);
}
