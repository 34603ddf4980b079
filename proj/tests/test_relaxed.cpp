#include <doctest.h>

#include <algorithm>

#include "fcc/oracle.hpp"
#include "fcc/relaxed.hpp"
#include "helpers.hpp"

using namespace fcc;
using namespace fcc::testing;

TEST_CASE("alpha_cluster_bound: hand-evaluated triples") {
  auto half = alpha_cluster_bound(Rational(1, 2));
  CHECK(half.alpha_hat == 2);
  CHECK(half.d_rel == Rational(32));

  auto two_thirds = alpha_cluster_bound(Rational(2, 3));
  CHECK(two_thirds.alpha_hat == 2);
  CHECK(two_thirds.d_rel == Rational(18));

  auto third = alpha_cluster_bound(Rational(1, 3));
  CHECK(third.alpha_hat == 1);
  CHECK(third.d_rel == Rational(36));

  CHECK_THROWS_AS(alpha_cluster_bound(Rational(0)), Error);
  CHECK_THROWS_AS(alpha_cluster_bound(Rational(1)), Error);
  CHECK_THROWS_AS(alpha_cluster_bound(Rational(3, 2)), Error);
  CHECK_THROWS_AS(alpha_cluster_bound(Rational(-1, 2)), Error);
}

TEST_CASE("alpha_params produces the alpha band around each color share") {
  ColoredForest f = path("rbrb");
  auto band = alpha_params(f, Rational(2, 3));
  CHECK(band.lo == std::vector<Rational>{Rational(1, 3), Rational(1, 3)});
  CHECK(band.hi == std::vector<Rational>{Rational(3, 4), Rational(3, 4)});
}

TEST_CASE("is_relaxed_fair: band membership and parameter validation") {
  ColoredForest f = two_pairs();
  RelaxedParams band{{Rational(1, 3), Rational(1, 3)}, {Rational(3, 4), Rational(3, 4)}};

  CHECK(is_relaxed_fair(f, {0, 1, 0, 1}, band));  // exactly fair fits any valid band
  CHECK(is_relaxed_fair(f, {0, 0, 0, 0}, band));  // whole set always matches the shares
  CHECK_FALSE(is_relaxed_fair(f, {0, 0, 1, 1}, band));  // single-color cluster

  SUBCASE("invalid bands are rejected") {
    RelaxedParams bad = band;
    bad.lo[0] = Rational(0);
    CHECK_THROWS_AS(is_relaxed_fair(f, {0, 1, 0, 1}, bad), Error);
    bad = band;
    bad.hi[1] = Rational(1);
    CHECK_THROWS_AS(is_relaxed_fair(f, {0, 1, 0, 1}, bad), Error);
    bad = band;
    bad.lo[0] = Rational(2, 3);  // above the color's overall share
    CHECK_THROWS_AS(is_relaxed_fair(f, {0, 1, 0, 1}, bad), Error);
    bad = band;
    bad.hi = {Rational(2, 5)};  // wrong arity
    CHECK_THROWS_AS(is_relaxed_fair(f, {0, 1, 0, 1}, bad), Error);
  }
}

TEST_CASE("alpha-relaxed solver: relaxation buys one cut on the bent path") {
  ColoredForest f = path("rrbrbb");
  CHECK(solve_one_one(f).cost.total == 4);
  auto r = solve_alpha_relaxed_one_one(f, Rational(2, 3));
  CHECK(r.cost.total == 3);
  CHECK(r.solver == "alpha_relaxed");
  CHECK(r.cost.total == brute_force_relaxed(f, alpha_params(f, Rational(2, 3))).cost.total);
  CHECK(is_relaxed_fair(f, r.assignment, alpha_params(f, Rational(2, 3))));
}

TEST_CASE("alpha-relaxed solver: small frozen values") {
  SUBCASE("perfect matching stays optimal at cost zero") {
    ColoredForest f = make_forest(colors("rbrbrb"), {{0, 1}, {2, 3}, {4, 5}});
    CHECK(solve_one_one(f).cost.total == 0);
    CHECK(solve_alpha_relaxed_one_one(f, Rational(1, 2)).cost.total == 0);
  }
  SUBCASE("blocked path") {
    ColoredForest f = path("rrrbbb");
    CHECK(solve_alpha_relaxed_one_one(f, Rational(2, 3)).cost.total == 5);
  }
  SUBCASE("wrong ratio is rejected") {
    CHECK_THROWS_AS(solve_alpha_relaxed_one_one(path("rrb"), Rational(1, 2)), Error);
  }
}

TEST_CASE("alpha-relaxed solver: matches the relaxed oracle on random forests") {
  for (const Rational& alpha : {Rational(1, 2), Rational(2, 3)}) {
    for (int n : {4, 6, 8}) {
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        ColoredForest f = random_forest(n, {1, 1}, seed * 11 + n);
        auto r = solve_alpha_relaxed_one_one(f, alpha);
        long long want = brute_force_relaxed(f, alpha_params(f, alpha)).cost.total;
        CHECK_MESSAGE(r.cost.total == want, "alpha=", alpha.numerator(), "/", alpha.denominator(),
                      " n=", n, " seed=", seed);
        CHECK(r.cost.total <= solve_one_one(f).cost.total);
        CHECK(cc_cost(f, r.assignment).total == r.cost.total);
        CHECK(is_alpha_fair(f, r.assignment, alpha));
      }
    }
  }
}

TEST_CASE("general-band relaxed solver (experimental)") {
  ColoredForest f = path("rrbrbb");
  RelaxedParams band{{Rational(1, 3), Rational(1, 3)}, {Rational(3, 4), Rational(3, 4)}};
  auto r = solve_relaxed_general(f, band);
  CHECK(r.solver == "relaxed_general");
  CHECK(r.cost.total == 3);
  CHECK(r.cost.total == brute_force_relaxed(f, band).cost.total);

  SUBCASE("a band admitting only the exact ratio delegates to the exact solver") {
    RelaxedParams exact_band{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
    auto e = solve_relaxed_general(f, exact_band);
    CHECK(e.solver == "one_one");
    CHECK(e.cost.total == 4);
  }

  SUBCASE("agrees with the relaxed oracle on bands wider than the instance") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      ColoredForest g = random_forest(6, {1, 1}, seed + 50);
      RelaxedParams b{{Rational(1, 3), Rational(1, 3)}, {Rational(3, 4), Rational(3, 4)}};
      CHECK(solve_relaxed_general(g, b).cost.total == brute_force_relaxed(g, b).cost.total);
    }
  }
}

TEST_CASE("relaxed solver is deterministic") {
  ColoredForest f = random_forest(8, {1, 1}, 9);
  CHECK(solve_alpha_relaxed_one_one(f, Rational(1, 2)).assignment ==
        solve_alpha_relaxed_one_one(f, Rational(1, 2)).assignment);
}
