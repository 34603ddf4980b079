#pragma once

// Approximation layer: the linear-time greedy fair clustering, its exact
// approximation-ratio formula, an epsilon-driven dispatcher that trades the
// greedy bound against exact solving, and the catch-all automatic solver
// router used by the command-line tool.

#include <algorithm>
#include <string>
#include <vector>

#include "core.hpp"
#include "few_clusters.hpp"
#include "solvers_dp.hpp"
#include "solvers_linear.hpp"

namespace fcc {

/// Linear-time fair clustering: sort the vertices by color (ascending vertex
/// id within a color) and hand the j-th cluster the next ratio-many vertices
/// of every color.  Output is fair by construction with n/d clusters of the
/// minimum size d.  The cost never exceeds (d-1)n/2 + m: each cluster
/// contributes at most C(d,2) intra pairs and every edge costs at most 1.
inline SolveResult greedy_fair(const ColoredForest& f) {
  ColorSpec spec = derive_color_spec(f);
  std::vector<std::vector<int>> by_color(f.k);
  for (int i = 0; i < f.k; ++i) by_color[i].reserve(f.color_count[i]);
  for (int v = 0; v < f.n; ++v) by_color[f.color[v]].push_back(v);

  long long clusters = f.n / spec.d;
  Assignment a(f.n, 0);
  for (int i = 0; i < f.k; ++i) {
    long long next = 0;
    for (long long j = 0; j < clusters; ++j)
      for (long long t = 0; t < spec.ratio[i]; ++t) a[by_color[i][next++]] = static_cast<int>(j);
  }
  return finalize_result(f, a, "greedy");
}

/// Worst-case ratio of the greedy clustering to the optimum on a forest with
/// n vertices, m edges, and minimum fair cluster size d:
///
///   ((d^2 - d) n + 2 d m) / ((d^2 - 5d + 4) n + 2 d m)
///
/// For a tree (m = n - 1) this simplifies to
/// ((d^2 + d) n - 2d) / ((d^2 - 3d + 4) n - 2d), which stays positive for all
/// d >= 2; on general forests the denominator can drop to zero or below when
/// d < 4, in which case the formula certifies nothing.
inline Rational approx_ratio_bound(long long n, long long m, long long d) {
  long long num = (d * d - d) * n + 2 * d * m;
  long long den = (d * d - 5 * d + 4) * n + 2 * d * m;
  if (den <= 0)
    fail(Errc::UndefinedBound,
         "approximation bound undefined: (d^2-5d+4)n + 2dm = " + std::to_string(den) +
             " is not positive (d=" + std::to_string(d) + ", n=" + std::to_string(n) +
             ", m=" + std::to_string(m) + ")");
  return Rational(num, den);
}

/// Epsilon-driven solver: returns a clustering of cost at most (1+eps) times
/// the optimum.  Small cluster sizes (d <= 4) are solved exactly; otherwise
/// the greedy clustering is used whenever its ratio bound already meets
/// 1+eps, and the remaining cases satisfy d < 4/eps + 5, so an exact solve
/// stays within the configured cluster-size ceiling for any fixed eps as n
/// grows.  The refusal, if the ceiling is still exceeded, names both bounds.
inline SolveResult solve_ptas(const ColoredForest& f, const Rational& eps,
                              long long max_d = env_ceiling("FCC_MAX_D", 8)) {
  if (eps <= 0) fail(Errc::BadParams, "epsilon must be positive");
  ColorSpec spec = derive_color_spec(f);
  if (spec.d <= 4) return solve_general(f, max_d);
  // d >= 5 keeps the denominator positive, so the bound always exists here.
  Rational bound = approx_ratio_bound(f.n, f.m(), spec.d);
  if (bound <= Rational(1) + eps) return greedy_fair(f);
  // bound > 1+eps forces d < 4/eps + 5: for d >= 4/eps + 5 the bound is at
  // most (d-1)/(d-5) <= 1+eps, contradicting the branch we are in.
  if (spec.d > max_d) {
    Rational need = Rational(4) / eps + 5;
    fail(Errc::TooLargeClusterSize,
         "epsilon " + std::to_string(eps.numerator()) + "/" + std::to_string(eps.denominator()) +
             " requires exact solving for all d < 4/eps + 5 = " + std::to_string(need.numerator()) +
             "/" + std::to_string(need.denominator()) + ", but d=" + std::to_string(spec.d) +
             " exceeds the exact-solver ceiling FCC_MAX_D=" + std::to_string(max_d));
  }
  return solve_general(f, max_d);
}

/// Routes an instance to the most specific exact solver that applies:
/// 1:1 ratios to the matching solver, a single tree of diameter at most 3 to
/// the diameter solver, 1:2 ratios to the two-phase DP, small cluster sizes
/// to the general splitting DP, and two-color instances with few clusters to
/// the cut-off solver.  Anything else is refused with a pointer to the
/// approximate alternatives.
inline SolveResult solve_auto(const ColoredForest& f) {
  ColorSpec spec = derive_color_spec(f);
  if (spec.d == 2) return solve_one_one(f);
  if (f.m() == f.n - 1) {
    auto far0 = detail::bfs_farthest(f, 0);
    auto diam = detail::bfs_farthest(f, far0.first);
    if (diam.second <= 3) return solve_diameter_le3(f);
  }
  if (f.k == 2 && std::min(spec.ratio[0], spec.ratio[1]) == 1 &&
      std::max(spec.ratio[0], spec.ratio[1]) == 2)
    return solve_one_two(f);
  if (spec.d <= env_ceiling("FCC_MAX_D", 8)) return solve_general(f);
  if (f.k == 2 && std::min(spec.ratio[0], spec.ratio[1]) == 1) {
    int rare = spec.ratio[0] == 1 ? 0 : 1;
    if (f.color_count[rare] <= env_ceiling("FCC_MAX_P", 4)) return solve_one_c(f);
  }
  fail(Errc::NoExactSolverApplicable,
       "no exact solver applies (d=" + std::to_string(spec.d) +
           " exceeds FCC_MAX_D, and the instance is not two colors with few clusters); "
           "use greedy_fair or solve_ptas for an approximate clustering");
}

}  // namespace fcc
