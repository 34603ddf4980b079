#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "fcc/core.hpp"

namespace fcc {

/// Maximum matching restricted to admissible edges, on a forest, by the
/// leaf-up subtree DP: per vertex the best matching size with the vertex
/// free (children each contribute their unconstrained best) and the best
/// overall (possibly matching one admissible child, which must then stay
/// free toward its own children).  Iterative throughout; linear time.
template <class Admissible>
std::vector<std::pair<int, int>> max_matching_forest(const ColoredForest& f, Admissible&& admissible) {
  RootedForest rf = root_forest(f);
  std::vector<long long> best(f.n, 0), best_free(f.n, 0);
  std::vector<int> choice(f.n, -1);

  for (auto it = rf.order.rbegin(); it != rf.order.rend(); ++it) {
    int v = *it;
    long long children_best = 0;
    for (int u : f.adj[v])
      if (u != rf.parent[v]) children_best += best[u];
    best_free[v] = children_best;
    best[v] = children_best;
    for (int u : f.adj[v]) {
      if (u == rf.parent[v] || !admissible(v, u)) continue;
      long long cand = 1 + best_free[u] + children_best - best[u];
      if (cand > best[v]) {
        best[v] = cand;
        choice[v] = u;
      }
    }
  }

  std::vector<std::pair<int, int>> matching;
  std::vector<std::pair<int, bool>> stack;  // vertex, already matched upward
  for (int r : rf.roots) stack.emplace_back(r, false);
  while (!stack.empty()) {
    auto [v, matched_up] = stack.back();
    stack.pop_back();
    int take = (!matched_up) ? choice[v] : -1;
    if (take != -1) matching.emplace_back(v, take);
    for (int u : f.adj[v])
      if (u != rf.parent[v]) stack.emplace_back(u, u == take);
  }
  return matching;
}

/// Exact solver for ratio 1:1.  Pairs as many adjacent red-blue vertices as
/// a maximum matching allows; every other cluster is a non-adjacent
/// red-blue pair, filled in ascending vertex id.
inline SolveResult solve_one_one(const ColoredForest& f) {
  ColorSpec spec = derive_color_spec(f);
  if (f.k != 2 || spec.ratio != std::vector<long long>{1, 1})
    fail(Errc::WrongRatio, "this solver requires exactly two colors in ratio 1:1");

  auto matching = max_matching_forest(f, [&](int u, int v) { return f.color[u] != f.color[v]; });

  Assignment a(f.n, -1);
  int cluster = 0;
  for (auto& [u, v] : matching) a[u] = a[v] = cluster++;
  std::vector<int> free_red, free_blue;
  for (int v = 0; v < f.n; ++v)
    if (a[v] == -1) (f.color[v] == 0 ? free_red : free_blue).push_back(v);
  for (std::size_t i = 0; i < free_red.size(); ++i) {
    a[free_red[i]] = cluster;
    a[free_blue[i]] = cluster;
    ++cluster;
  }
  return finalize_result(f, a, "one_one");
}

namespace detail {

/// Farthest vertex from start (smallest id among ties) plus its distance.
inline std::pair<int, int> bfs_farthest(const ColoredForest& f, int start) {
  std::vector<int> dist(f.n, -1);
  std::vector<int> queue = {start};
  dist[start] = 0;
  int far = start;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    if (dist[u] > dist[far]) far = u;
    for (int v : f.adj[u])
      if (dist[v] == -1) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return {far, dist[far]};
}

/// Assigns `quota[i]` vertices of each color from the pools (ascending id)
/// to cluster `id`, skipping already-assigned vertices.
inline void fill_quota(const ColoredForest& f, Assignment& a, std::vector<long long> need, int id) {
  for (int v = 0; v < f.n && std::any_of(need.begin(), need.end(), [](long long x) { return x > 0; }); ++v) {
    if (a[v] != -1 || need[f.color[v]] == 0) continue;
    a[v] = id;
    --need[f.color[v]];
  }
}

inline Assignment chunk_remaining(const ColoredForest& f, Assignment a, const ColorSpec& spec, int next_id) {
  std::vector<std::vector<int>> pool(f.k);
  for (int v = 0; v < f.n; ++v)
    if (a[v] == -1) pool[f.color[v]].push_back(v);
  std::vector<std::size_t> head(f.k, 0);
  bool more = true;
  while (more) {
    more = false;
    for (int c = 0; c < f.k; ++c)
      if (head[c] < pool[c].size()) more = true;
    if (!more) break;
    for (int c = 0; c < f.k; ++c) {
      if (head[c] + spec.ratio[c] > pool[c].size())
        fail(Errc::ParityViolation, "internal error: leftover vertices do not chunk into fair clusters");
      for (long long t = 0; t < spec.ratio[c]; ++t) a[pool[c][head[c]++]] = next_id;
    }
    ++next_id;
  }
  return a;
}

}  // namespace detail

/// Exact solver for a single tree of diameter at most 3.
///
/// Stars (diameter <= 2): the center keeps d-1 adjacent vertices, so every
/// minimum-size fair clustering costs the same; the fill is ascending by id.
/// Diameter 3 (two adjacent centers): either the centers share a cluster
/// (any fill keeps exactly d-1 edges) or they are separated and each packs
/// as many of its own neighbors as its quotas allow; the cheaper candidate
/// wins, ties preferring the shared cluster.
inline SolveResult solve_diameter_le3(const ColoredForest& f) {
  ColorSpec spec = derive_color_spec(f);
  if (f.m() != f.n - 1) fail(Errc::NotATree, "this solver requires a single connected tree");
  if (spec.d == 2) return solve_one_one(f);

  auto [u, du] = detail::bfs_farthest(f, 0);
  auto [w, diameter] = detail::bfs_farthest(f, u);
  if (diameter > 3) fail(Errc::DiameterTooLarge, "tree diameter exceeds 3");

  long long clusters = f.n / spec.d;
  if (clusters == 1) {
    Assignment all(f.n, 0);
    return finalize_result(f, all, "diam3");
  }

  if (diameter <= 2) {
    int center = 0;
    for (int v = 1; v < f.n; ++v)
      if (f.adj[v].size() > f.adj[center].size()) center = v;
    Assignment a(f.n, -1);
    a[center] = 0;
    auto need = spec.ratio;
    --need[f.color[center]];
    detail::fill_quota(f, a, need, 0);
    return finalize_result(f, detail::chunk_remaining(f, std::move(a), spec, 1), "diam3");
  }

  // Diameter exactly 3: recover the adjacent centers from a longest path.
  std::vector<int> parent(f.n, -2), queue = {u};
  parent[u] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int x : f.adj[queue[head]])
      if (parent[x] == -2) {
        parent[x] = queue[head];
        queue.push_back(x);
      }
  int c1 = parent[w], c2 = parent[c1];  // path w - c1 - c2 - u
  if (c1 > c2) std::swap(c1, c2);

  Cost best_cost;
  Assignment best;
  bool have = false;

  // Candidate: centers share a cluster.
  {
    std::vector<long long> need = spec.ratio;
    --need[f.color[c1]];
    --need[f.color[c2]];
    if (std::all_of(need.begin(), need.end(), [](long long x) { return x >= 0; })) {
      Assignment a(f.n, -1);
      a[c1] = a[c2] = 0;
      detail::fill_quota(f, a, need, 0);
      a = detail::chunk_remaining(f, std::move(a), spec, 1);
      best = a;
      best_cost = cc_cost(f, a);
      have = true;
    }
  }

  // Candidate: centers apart, each packing its own neighbors first.
  {
    Assignment a(f.n, -1);
    a[c1] = 0;
    a[c2] = 1;
    auto pack = [&](int center, int id) {
      std::vector<long long> need = spec.ratio;
      --need[f.color[center]];
      for (int x : f.adj[center])
        if (a[x] == -1 && need[f.color[x]] > 0) {
          a[x] = id;
          --need[f.color[x]];
        }
      return need;
    };
    auto need1 = pack(c1, 0);
    auto need2 = pack(c2, 1);
    detail::fill_quota(f, a, need1, 0);
    detail::fill_quota(f, a, need2, 1);
    a = detail::chunk_remaining(f, std::move(a), spec, 2);
    Cost c = cc_cost(f, a);
    if (!have || c.total < best_cost.total) {
      best = a;
      best_cost = c;
    }
  }

  return finalize_result(f, best, "diam3");
}

}  // namespace fcc
