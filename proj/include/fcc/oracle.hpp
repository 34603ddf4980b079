#pragma once

#include <functional>
#include <vector>

#include "fcc/core.hpp"

namespace fcc {

/// Exhaustive reference solvers.  These enumerate set partitions directly
/// and never share logic with the polynomial solvers they certify; they are
/// the ground truth the test suite measures everything else against.
struct OracleOptions {
  int max_n = 12;            // refuse larger instances (Bell-number growth)
  bool min_size_only = false; // speed mode: restrict to clusters of minimum fair size
};

struct OracleResult {
  Cost cost;
  Assignment assignment;  // lexicographically smallest optimum, as a restricted growth string
};

namespace detail {

/// Enumerates all set partitions of {0..n-1} as restricted growth strings in
/// lexicographic order: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).
template <class Visit>
void enumerate_partitions(int n, Visit&& visit) {
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      visit(a);
      return;
    }
    for (int j = 0; j <= used; ++j) {
      a[i] = j;
      rec(i + 1, std::max(used, j + 1));
    }
  };
  if (n > 0) rec(0, 0);
}

struct PartitionSearch {
  const ColoredForest& f;
  ColorSpec spec;
  std::vector<std::vector<long long>> remaining;  // suffix color counts: remaining[i][c]
  std::vector<std::vector<long long>> counts;     // cluster -> color counts
  std::vector<long long> sizes;                   // cluster -> size
  std::vector<int> a;
  long long best = -1;
  std::vector<Assignment> optima;  // filled only when collect_all
  bool collect_all = false;
  bool min_size_only = false;
  const RelaxedParams* relaxed = nullptr;

  explicit PartitionSearch(const ColoredForest& forest) : f(forest), spec(derive_color_spec(forest)) {
    remaining.assign(f.n + 1, std::vector<long long>(f.k, 0));
    for (int i = f.n - 1; i >= 0; --i) {
      remaining[i] = remaining[i + 1];
      ++remaining[i][f.color[i]];
    }
    a.assign(f.n, 0);
  }

  /// Exact mode: can every started cluster still be completed to an integer
  /// multiple of the ratio with the suffix vertices?  Summing each cluster's
  /// minimum per-color demand and comparing against the suffix supply never
  /// prunes an extendable prefix.
  bool exact_prefix_viable(int next_vertex, int used) const {
    std::vector<long long> need(f.k, 0);
    for (int j = 0; j < used; ++j) {
      long long t = 1;
      for (int c = 0; c < f.k; ++c) {
        long long lots = (counts[j][c] + spec.ratio[c] - 1) / spec.ratio[c];
        t = std::max(t, lots);
      }
      if (min_size_only && t > 1) return false;
      for (int c = 0; c < f.k; ++c) need[c] += t * spec.ratio[c] - counts[j][c];
    }
    for (int c = 0; c < f.k; ++c)
      if (need[c] > remaining[next_vertex][c]) return false;
    return true;
  }

  bool cluster_ok(const std::vector<long long>& c, long long s) const {
    if (relaxed) {
      for (int i = 0; i < f.k; ++i) {
        Rational frac(c[i], s);
        if (frac < relaxed->lo[i] || frac > relaxed->hi[i]) return false;
      }
      return true;
    }
    if (s % spec.d != 0) return false;
    long long t = s / spec.d;
    for (int i = 0; i < f.k; ++i)
      if (c[i] != t * spec.ratio[i]) return false;
    return true;
  }

  long long evaluate(int used) const {
    for (int j = 0; j < used; ++j)
      if (!cluster_ok(counts[j], sizes[j])) return -1;
    long long chi = 0;
    for (auto& [u, v] : f.edges)
      if (a[u] != a[v]) ++chi;
    long long pairs = 0;
    for (int j = 0; j < used; ++j) pairs += sizes[j] * (sizes[j] - 1) / 2;
    return pairs - f.m() + 2 * chi;  // psi + chi
  }

  void rec(int i, int used) {
    if (i == f.n) {
      long long total = evaluate(used);
      if (total < 0) return;
      if (best < 0 || total < best) {
        best = total;
        optima.clear();
        optima.push_back(a);
      } else if (collect_all && total == best) {
        optima.push_back(a);
      }
      return;
    }
    for (int j = 0; j <= used; ++j) {
      a[i] = j;
      if (j == used) {
        counts.emplace_back(f.k, 0);
        sizes.push_back(0);
      }
      ++counts[j][f.color[i]];
      ++sizes[j];
      bool viable = relaxed ? true : exact_prefix_viable(i + 1, std::max(used, j + 1));
      if (viable) rec(i + 1, std::max(used, j + 1));
      --counts[j][f.color[i]];
      --sizes[j];
      if (j == used) {
        counts.pop_back();
        sizes.pop_back();
      }
    }
  }
};

inline OracleResult run_search(PartitionSearch& search, const ColoredForest& f) {
  search.rec(0, 0);
  if (search.optima.empty())
    fail(Errc::NoFairAssembly, "no clustering satisfies the fairness constraints");
  OracleResult r;
  r.assignment = search.optima.front();
  r.cost = cc_cost(f, r.assignment);
  return r;
}

inline void check_oracle_size(const ColoredForest& f, const OracleOptions& opts) {
  if (f.n > opts.max_n)
    fail(Errc::TooLarge, "exhaustive search limited to " + std::to_string(opts.max_n) +
                             " vertices (got " + std::to_string(f.n) + "); raise max_n to override");
}

}  // namespace detail

/// Minimum-cost exactly fair clustering by exhaustive search.
inline OracleResult brute_force_exact(const ColoredForest& f, OracleOptions opts = {}) {
  detail::check_oracle_size(f, opts);
  detail::PartitionSearch s(f);
  s.min_size_only = opts.min_size_only;
  return detail::run_search(s, f);
}

/// All optimal exactly fair partitions, in lexicographic order of their
/// restricted growth strings.
inline std::vector<Assignment> brute_force_exact_optima(const ColoredForest& f, OracleOptions opts = {}) {
  detail::check_oracle_size(f, opts);
  detail::PartitionSearch s(f);
  s.min_size_only = opts.min_size_only;
  s.collect_all = true;
  s.rec(0, 0);
  return s.optima;
}

/// Minimum-cost relaxed-fair clustering by exhaustive search: every cluster's
/// per-color frequencies must sit inside the given bands.
inline OracleResult brute_force_relaxed(const ColoredForest& f, const RelaxedParams& params,
                                        OracleOptions opts = {}) {
  detail::check_oracle_size(f, opts);
  if (params.lo.size() != static_cast<std::size_t>(f.k) || params.hi.size() != static_cast<std::size_t>(f.k))
    fail(Errc::BadParams, "band count does not match color count");
  detail::PartitionSearch s(f);
  s.relaxed = &params;
  return detail::run_search(s, f);
}

/// Number of set partitions of an n-element set, by direct enumeration.
inline long long count_partitions(int n) {
  long long c = 0;
  detail::enumerate_partitions(n, [&](const std::vector<int>&) { ++c; });
  return c;
}

}  // namespace fcc
