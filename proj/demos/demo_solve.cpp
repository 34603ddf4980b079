// Walkthrough of the core solving API: build a forest, inspect its color
// ratio, run the automatic solver dispatch, and compare exact fairness with
// a relaxed solve.  Prints result documents to stdout.

#include <iostream>

#include "fcc/approx.hpp"
#include "fcc/io.hpp"
#include "fcc/relaxed.hpp"

int main() {
  using namespace fcc;

  // A forest of two paths: red-blue-red-blue and red-red-blue-blue.
  //   0-1-2-3   4-5-6-7
  ColoredForest f = make_forest({0, 1, 0, 1, 0, 0, 1, 1},
                                {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}});

  ColorSpec spec = derive_color_spec(f);
  std::cout << "colors " << f.k << ", ratio";
  for (long long c : spec.ratio) std::cout << " " << c;
  std::cout << ", fair cluster size d = " << spec.d << "\n\n";

  // solve_auto picks the most specific exact solver; here the 1:1 matching
  // solver, which pairs adjacent red-blue vertices greedily on each tree.
  SolveResult exact = solve_auto(f);
  std::cout << "exact solve (" << exact.solver << "):\n"
            << serialize_result(f, exact.assignment, {exact.solver, std::nullopt, std::nullopt})
            << "\n";

  // Relaxing fairness to alpha = 2/3 lets clusters deviate from the exact
  // ratio within a band, which can only lower the optimal cost.  On the path
  // r-r-b-r-b-b the exact optimum is 4, but allowing clusters like {r,r,b}
  // brings it down to 3.
  ColoredForest path6 = make_forest({0, 0, 1, 0, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  Rational alpha(2, 3);
  SolveResult strict = solve_one_one(path6);
  SolveResult relaxed = solve_alpha_relaxed_one_one(path6, alpha);
  std::cout << "relaxed solve (alpha = " << rational_str(alpha) << "):\n"
            << serialize_result(path6, relaxed.assignment, {relaxed.solver, alpha, std::nullopt})
            << "\n";

  std::cout << "exact optimum " << strict.cost.total << ", relaxed optimum "
            << relaxed.cost.total << "\n";

  // The cost identity behind all solvers: for clusters of exactly size d,
  // total = (d-1)n/2 - m + 2*chi.
  Cost c = cc_cost(f, exact.assignment);
  std::cout << "cost identity: " << c.total << " == "
            << cost_by_cuts(f.n, f.m(), spec.d, c.chi) << "\n";
  return 0;
}
