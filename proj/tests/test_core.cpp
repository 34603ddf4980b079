#include <doctest.h>

#include <functional>

#include "fcc/core.hpp"
#include "helpers.hpp"

using namespace fcc;
using fcc::testing::colors;
using fcc::testing::path;
using fcc::testing::star;
using fcc::testing::two_pairs;

namespace {

void check_throws(Errc expected, const std::function<void()>& fn) {
  try {
    fn();
    FAIL_CHECK("expected Error " << errc_name(expected) << ", nothing thrown");
  } catch (const Error& e) {
    CHECK(e.code() == expected);
  }
}

}  // namespace

TEST_CASE("make_forest validates structure") {
  SUBCASE("gap in color ids") {
    check_throws(Errc::BadColor, [] { make_forest({0, 2, 2}, {}); });
  }
  SUBCASE("negative color") {
    check_throws(Errc::BadColor, [] { make_forest({0, -1}, {}); });
  }
  SUBCASE("duplicate edge, either orientation") {
    check_throws(Errc::DuplicateEdge, [] { make_forest({0, 1}, {{0, 1}, {1, 0}}); });
  }
  SUBCASE("cycle") {
    check_throws(Errc::NotAForest, [] { make_forest({0, 1, 0}, {{0, 1}, {1, 2}, {2, 0}}); });
  }
  SUBCASE("self-loop") {
    check_throws(Errc::NotAForest, [] { make_forest({0, 1}, {{0, 0}}); });
  }
  SUBCASE("endpoint out of range") {
    check_throws(Errc::ParseError, [] { make_forest({0, 1}, {{0, 2}}); });
  }
  SUBCASE("adjacency is sorted and edges normalized") {
    auto f = make_forest(colors("rbr"), {{2, 1}, {1, 0}});
    CHECK(f.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(f.adj[1] == std::vector<int>{0, 2});
  }
}

TEST_CASE("color spec derivation reduces by gcd") {
  auto check = [](const std::string& cs, std::vector<long long> ratio, long long d) {
    auto spec = derive_color_spec(make_forest(colors(cs), {}));
    CHECK(spec.ratio == ratio);
    CHECK(spec.d == d);
  };
  check("rrbb", {1, 1}, 2);
  check("rrbbbb", {1, 2}, 3);
  check("rrrbbbggg", {1, 1, 1}, 3);
  check("rrrrbbbbbb", {2, 3}, 5);

  SUBCASE("single color is unsupported") {
    check_throws(Errc::UnsupportedInstance, [] { derive_color_spec(make_forest({0, 0}, {{0, 1}})); });
  }
}

TEST_CASE("cost and fairness on the two-pair forest") {
  auto f = two_pairs();

  SUBCASE("everything in one cluster") {
    Cost c = cc_cost(f, {0, 0, 0, 0});
    CHECK(c.chi == 0);
    CHECK(c.psi == 4);
    CHECK(c.total == 4);
    CHECK(is_fair(f, {0, 0, 0, 0}));
  }
  SUBCASE("two mixed pairs") {
    Cost c = cc_cost(f, {0, 1, 0, 1});
    CHECK(c.chi == 2);
    CHECK(c.psi == 2);
    CHECK(c.total == 4);
    CHECK(is_fair(f, {0, 1, 0, 1}));
  }
  SUBCASE("monochrome clusters are unfair") {
    CHECK_FALSE(is_fair(f, {0, 0, 1, 1}));
  }
  SUBCASE("assignment length must match") {
    check_throws(Errc::LengthMismatch, [&] { cc_cost(f, {0, 0, 0}); });
  }
}

TEST_CASE("cost expressed through cuts") {
  SUBCASE("closed form for uniform cluster size") {
    auto f = path("rbrb");
    Cost c = cc_cost(f, {0, 0, 1, 1});
    CHECK(c.total == cost_by_cuts(4, 3, 2, c.chi));
    CHECK(c.total == 1);
  }
  SUBCASE("tree with a single full-size cluster") {
    auto f = star("brrrrr");  // blue center, five red leaves, ratio 1:5
    Cost c = cc_cost(f, {0, 0, 0, 0, 0, 0});
    CHECK(c.chi == 0);
    CHECK(c.total == 10);
    CHECK(c.total == cost_by_cuts(6, 5, 6, 0));
  }
  SUBCASE("arbitrary sizes identity") {
    auto f = path("rrbbrb");
    Assignment a = {0, 0, 0, 1, 1, 1};
    Cost c = cc_cost(f, a);
    CHECK(c.total == cost_from_sizes({3, 3}, f.m(), c.chi));
  }
}

TEST_CASE("intra-cluster lower bound") {
  SUBCASE("tight for equal cluster sizes") {
    auto f = path("rbrb");
    Cost c = cc_cost(f, {0, 0, 1, 1});
    Rational bound = intra_lower_bound(4, f.m(), c.chi, 2);
    CHECK(bound == Rational(c.psi));
  }
  SUBCASE("valid when sizes differ, refinement still below psi") {
    auto f = path("rrrbbb");
    Assignment a = {0, 0, 0, 0, 1, 1};  // sizes 4 and 2, deviation 1 from n/parts = 3
    Cost c = cc_cost(f, a);
    CHECK(intra_lower_bound(6, f.m(), c.chi, 2) <= Rational(c.psi));
    CHECK(intra_lower_bound(6, f.m(), c.chi, 2, 1) <= Rational(c.psi));
  }
  SUBCASE("rejects nonsense") {
    check_throws(Errc::BadParams, [] { intra_lower_bound(4, 3, 0, 0); });
  }
}

TEST_CASE("components and normalization") {
  auto f = path("rbrbrb");
  auto comp = components_after_cuts(f, {{2, 3}});
  CHECK(comp == Assignment{0, 0, 0, 1, 1, 1});
  auto comp2 = components_after_cuts(f, {{2, 3}, {4, 5}});  // endpoints in either order
  CHECK(comp2 == Assignment{0, 0, 0, 1, 1, 2});
  CHECK(normalize_assignment({5, 5, 2, 7}) == Assignment{0, 0, 1, 2});
}

TEST_CASE("rational-integer comparisons terminate and compare by value") {
  // Guards against the C++20 reversed-candidate recursion in boost::rational.
  // The comparisons happen outside CHECK: doctest's expression decomposition
  // would otherwise evaluate them in a scope that only sees boost's operators.
  Rational five(200, 40);
  bool a = five == 5;
  bool b = 5 == five;
  bool c = five == 5LL;
  bool d = five != 4;
  bool e = 4 != five;
  bool g = Rational(7, 2) != 3;
  bool h = Rational(7, 2) == 3;
  CHECK(a);
  CHECK(b);
  CHECK(c);
  CHECK(d);
  CHECK(e);
  CHECK(g);
  CHECK_FALSE(h);
}
