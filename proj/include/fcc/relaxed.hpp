#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fcc/core.hpp"
#include "fcc/solvers_dp.hpp"
#include "fcc/solvers_linear.hpp"

namespace fcc {

/// A relaxation strength 0 < alpha < 1 with its derived quantities: the
/// smallest positive integer alpha_hat making 2*alpha_hat/alpha an integer
/// greater than 4, and the cluster-size bound d_rel = 4*alpha_hat/alpha^2
/// (optimal relaxed clusterings need only clusters strictly smaller).
struct AlphaParams {
  Rational alpha;
  long long alpha_hat = 0;
  Rational d_rel;
};

inline AlphaParams alpha_cluster_bound(const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) fail(Errc::BadParams, "alpha must lie strictly between 0 and 1");
  long long hat = 0;
  for (long long cand = 1;; ++cand) {
    Rational t = Rational(2 * cand) / alpha;
    if (t.denominator() == 1 && t > 4) {
      hat = cand;
      break;
    }
  }
  return {alpha, hat, Rational(4 * hat) / (alpha * alpha)};
}

inline void validate_relaxed_params(const ColoredForest& f, const RelaxedParams& params) {
  if (params.lo.size() != static_cast<std::size_t>(f.k) ||
      params.hi.size() != static_cast<std::size_t>(f.k))
    fail(Errc::BadParams, "band count does not match color count");
  for (int i = 0; i < f.k; ++i) {
    Rational share(f.color_count[i], f.n);
    if (!(params.lo[i] > 0 && params.lo[i] <= share && share <= params.hi[i] && params.hi[i] < 1))
      fail(Errc::BadParams, "band for color " + std::to_string(i) +
                                " must satisfy 0 < lo <= color share <= hi < 1");
  }
}

/// The fairness band induced by relaxation strength alpha: color i may make
/// up between alpha*share and share/alpha of each cluster, where share is
/// the color's overall frequency.  The upper bound may reach or exceed 1 for
/// small alpha; fractions never do, so that imposes no constraint.
inline RelaxedParams alpha_params(const ColoredForest& f, const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) fail(Errc::BadParams, "alpha must lie strictly between 0 and 1");
  RelaxedParams params;
  for (int i = 0; i < f.k; ++i) {
    Rational share(f.color_count[i], f.n);
    params.lo.push_back(alpha * share);
    params.hi.push_back(share / alpha);
  }
  return params;
}

namespace detail {

/// Band membership alone, without validating the band's own invariants
/// (alpha-derived bands may legitimately have an upper bound of 1 or more).
inline bool in_band(const ColoredForest& f, const Assignment& a, const RelaxedParams& params) {
  check_assignment(f, a);
  int clusters = *std::max_element(a.begin(), a.end()) + 1;
  std::vector<std::vector<long long>> counts(clusters, std::vector<long long>(f.k, 0));
  std::vector<long long> size(clusters, 0);
  for (int v = 0; v < f.n; ++v) {
    ++counts[a[v]][f.color[v]];
    ++size[a[v]];
  }
  for (int s = 0; s < clusters; ++s) {
    if (size[s] == 0) continue;
    for (int i = 0; i < f.k; ++i) {
      Rational frac(counts[s][i], size[s]);
      if (frac < params.lo[i] || frac > params.hi[i]) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Whether every cluster's color fractions sit inside the bands.  Exact
/// rational arithmetic throughout; boundary fractions count as inside.
inline bool is_relaxed_fair(const ColoredForest& f, const Assignment& a, const RelaxedParams& params) {
  validate_relaxed_params(f, params);
  return detail::in_band(f, a, params);
}

/// Band membership for the alpha-induced band.
inline bool is_alpha_fair(const ColoredForest& f, const Assignment& a, const Rational& alpha) {
  return detail::in_band(f, a, alpha_params(f, alpha));
}

namespace detail {

inline long long ceil_rational(const Rational& r) {
  return (r.numerator() + r.denominator() - 1) / r.denominator();
}

/// Cheapest way to merge a multiset of component colorings into clusters
/// that each pass the terminal test, measured by the sum of |S|(|S|-1)/2
/// over the resulting clusters (the only clustering-dependent cost part
/// besides cuts).  plan records, per assemblable multiset, either the best
/// first merge or the stop marker (-1,-1) meaning every id is already a
/// valid cluster.
template <class ClusterOk>
struct RelaxedAssembly {
  const ColoringCodec& codec;
  ClusterOk cluster_ok;
  Rational size_limit;
  std::map<PartitionKey, long long> memo;  // -1 = not assemblable
  std::map<PartitionKey, std::pair<long long, long long>> plan;

  RelaxedAssembly(const ColoringCodec& c, ClusterOk ok, Rational limit)
      : codec(c), cluster_ok(std::move(ok)), size_limit(std::move(limit)) {}

  long long value(const PartitionKey& key) {
    auto found = memo.find(key);
    if (found != memo.end()) return found->second;
    long long best = -1;
    std::pair<long long, long long> action{-1, -1};
    if (std::all_of(key.begin(), key.end(), [&](long long id) { return cluster_ok(id); })) {
      best = 0;
      for (long long id : key) {
        long long sz = codec.size_of(id);
        best += sz * (sz - 1) / 2;
      }
    }
    std::set<std::pair<long long, long long>> tried;
    for (std::size_t i = 0; i < key.size(); ++i)
      for (std::size_t j = i + 1; j < key.size(); ++j) {
        auto pair_ids = std::make_pair(key[i], key[j]);
        if (!tried.insert(pair_ids).second) continue;
        long long merged = codec.add(key[i], key[j]);
        if (merged < 0) continue;
        if (!(Rational(codec.size_of(merged)) < size_limit)) continue;
        PartitionKey next = key;
        next.erase(next.begin() + j);
        next.erase(next.begin() + i);
        next = insert_key(std::move(next), merged);
        long long sub = value(next);
        if (sub >= 0 && (best < 0 || sub < best)) {
          best = sub;
          action = pair_ids;
        }
      }
    memo[key] = best;
    if (best >= 0) plan[key] = action;
    return best;
  }
};

/// Shared back half of the relaxed solvers: given the splitting DP and an
/// assembly with recorded plan, realize the best whole-forest coloring as an
/// actual clustering.
template <class Assembly>
Assignment realize_relaxed(const ColoredForest& f, SplittingDP& dp, Assembly& assembly,
                           const PartitionKey& best) {
  auto cut_edges = dp.reconstruct(best);
  Assignment comp = components_after_cuts(f, cut_edges);
  int nc = *std::max_element(comp.begin(), comp.end()) + 1;

  struct Unit {
    long long id = 0;
    int min_vertex = -1;
    std::vector<int> members;
  };
  std::vector<Unit> units(nc);
  for (int v = 0; v < f.n; ++v) {
    auto& u = units[comp[v]];
    if (u.min_vertex == -1) u.min_vertex = v;
    u.members.push_back(v);
  }
  for (auto& u : units) {
    std::vector<long long> counts(f.k, 0);
    for (int v : u.members) ++counts[f.color[v]];
    u.id = dp.codec.encode(counts);
  }

  PartitionKey cur = best;
  while (true) {
    auto [g1, g2] = assembly.plan.at(cur);
    if (g1 < 0) break;  // every unit is a valid cluster
    int i1 = -1, i2 = -1;
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i].id == g1 && (i1 == -1 || units[i].min_vertex < units[i1].min_vertex))
        i1 = static_cast<int>(i);
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (static_cast<int>(i) == i1) continue;
      if (units[i].id == g2 && (i2 == -1 || units[i].min_vertex < units[i2].min_vertex))
        i2 = static_cast<int>(i);
    }
    if (i1 == -1 || i2 == -1)
      fail(Errc::ParityViolation, "internal error: merge plan lost a unit");
    if (i2 < i1) std::swap(i1, i2);
    Unit merged;
    merged.id = dp.codec.add(units[i1].id, units[i2].id);
    merged.min_vertex = std::min(units[i1].min_vertex, units[i2].min_vertex);
    merged.members = units[i1].members;
    merged.members.insert(merged.members.end(), units[i2].members.begin(), units[i2].members.end());
    units.erase(units.begin() + i2);
    units.erase(units.begin() + i1);
    units.push_back(std::move(merged));

    cur.erase(std::find(cur.begin(), cur.end(), g2));
    cur.erase(std::find(cur.begin(), cur.end(), g1));
    cur = insert_key(std::move(cur), dp.codec.add(g1, g2));
  }

  std::sort(units.begin(), units.end(),
            [](const Unit& x, const Unit& y) { return x.min_vertex < y.min_vertex; });
  Assignment a(f.n, -1);
  int cluster = 0;
  for (auto& u : units) {
    for (int v : u.members) a[v] = cluster;
    ++cluster;
  }
  return a;
}

/// Normalize, recompute the cost, and re-verify the band before emitting.
inline SolveResult finalize_relaxed(const ColoredForest& f, Assignment a, const RelaxedParams& band,
                                    const std::string& name) {
  normalize_assignment(a);
  if (!in_band(f, a, band))
    fail(Errc::NoFairAssembly,
         "internal error: solver " + name + " produced a clustering outside the fairness band");
  Cost cost = cc_cost(f, a);
  return {std::move(a), cost, name};
}

template <class ClusterOk>
SolveResult solve_relaxed_core(const ColoredForest& f, const Rational& alpha_envelope,
                               ClusterOk&& cluster_ok, const RelaxedParams& band,
                               const std::string& name) {
  AlphaParams ap = alpha_cluster_bound(alpha_envelope);
  long long cap = ceil_rational(ap.d_rel);
  std::vector<long long> caps;
  for (int i = 0; i < f.k; ++i) caps.push_back(std::min(cap, f.color_count[i]));

  SplittingDP dp(f, caps);
  dp.run();

  RelaxedAssembly<std::decay_t<ClusterOk>> assembly(dp.codec, cluster_ok, ap.d_rel);
  const PartitionKey* best = nullptr;
  long long best_score = 0;
  for (const auto& [pc, cuts] : dp.forest) {
    long long sum = assembly.value(pc);
    if (sum < 0) continue;
    long long score = sum + 2 * cuts;
    if (!best || score < best_score) {
      best = &pc;
      best_score = score;
    }
  }
  if (!best) fail(Errc::NoFairAssembly, "internal error: no splitting assembles into the band");

  Assignment a = realize_relaxed(f, dp, assembly, *best);
  return finalize_relaxed(f, std::move(a), band, name);
}

}  // namespace detail

/// Minimum-cost alpha-relaxed fair clustering for two colors in ratio 1:1.
/// Components are bounded per color by the ceiling of d_rel, candidate
/// splittings are merged into clusters inside the alpha band and strictly
/// smaller than d_rel, and candidates compare by sum-of-cluster-pairs plus
/// twice the cuts (the only parts of the cost that depend on the choice).
inline SolveResult solve_alpha_relaxed_one_one(const ColoredForest& f, const Rational& alpha) {
  ColorSpec spec = derive_color_spec(f);
  if (f.k != 2 || spec.d != 2)
    fail(Errc::WrongRatio, "this solver requires exactly two colors in ratio 1:1");
  AlphaParams ap = alpha_cluster_bound(alpha);
  RelaxedParams band = alpha_params(f, alpha);

  // The one within-solver use of a codec before dp exists: build the same
  // codec the DP will use so cluster_ok can decode candidate colorings.
  long long cap = detail::ceil_rational(ap.d_rel);
  std::vector<long long> caps;
  for (int i = 0; i < f.k; ++i) caps.push_back(std::min(cap, f.color_count[i]));
  ColoringCodec codec(caps);

  auto cluster_ok = [codec, band, ap](long long id) {
    auto c = codec.decode(id);
    long long sz = 0;
    for (long long part : c) sz += part;
    if (!(Rational(sz) < ap.d_rel)) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Rational frac(c[i], sz);
      if (frac < band.lo[i] || frac > band.hi[i]) return false;
    }
    return true;
  };
  return detail::solve_relaxed_core(f, alpha, cluster_ok, band, "alpha_relaxed");
}

/// EXPERIMENTAL general-band relaxed solver for two colors in ratio 1:1.
/// Runs the alpha-relaxed machinery with the largest alpha whose band
/// envelopes the requested one and keeps only clusters inside the requested
/// band.  The cluster-size bound proven for alpha bands is merely inherited,
/// so optimality is guaranteed only when every optimal clustering of the
/// requested band uses clusters smaller than that bound (always true when
/// the forest itself is smaller).  A band degenerate to the exact ratio
/// delegates to the exact solver.
inline SolveResult solve_relaxed_general(const ColoredForest& f, const RelaxedParams& params) {
  validate_relaxed_params(f, params);
  ColorSpec spec = derive_color_spec(f);
  if (f.k != 2 || spec.d != 2)
    fail(Errc::WrongRatio, "this solver requires exactly two colors in ratio 1:1");

  Rational alpha(1);
  for (int i = 0; i < f.k; ++i) {
    alpha = std::min(alpha, Rational(2) * params.lo[i]);
    alpha = std::min(alpha, Rational(1) / (Rational(2) * params.hi[i]));
  }
  if (alpha >= 1) return solve_one_one(f);  // the band admits only the exact ratio

  AlphaParams ap = alpha_cluster_bound(alpha);
  long long cap = detail::ceil_rational(ap.d_rel);
  std::vector<long long> caps;
  for (int i = 0; i < f.k; ++i) caps.push_back(std::min(cap, f.color_count[i]));
  ColoringCodec codec(caps);

  auto cluster_ok = [codec, params](long long id) {
    auto c = codec.decode(id);
    long long sz = 0;
    for (long long part : c) sz += part;
    if (sz == 0) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Rational frac(c[i], sz);
      if (frac < params.lo[i] || frac > params.hi[i]) return false;
    }
    return true;
  };
  return detail::solve_relaxed_core(f, alpha, cluster_ok, params, "relaxed_general");
}

}  // namespace fcc
