#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fcc/core.hpp"
#include "fcc/solvers_linear.hpp"

namespace fcc {

/// One realizable way to split a rooted tree: the vertices kept with the
/// root plus k cut-off part groups (a group may collect several detached
/// pieces destined for the same cluster; each detachment costs one cut).
struct CutOffEntry {
  long long cost = 0;
  std::vector<int> kept;                // vertices in the root's part
  std::vector<std::vector<int>> parts;  // aligned with the key's size tuple
};

/// Keyed by (root-part size, descending tuple of the k part-group sizes).
using CutOffKey = std::pair<int, std::vector<int>>;
using CutOffTable = std::map<CutOffKey, CutOffEntry>;

namespace detail {

inline void relax_entry(CutOffTable& table, int kept_size, std::vector<std::pair<int, std::vector<int>>> slots,
                        long long cost, std::vector<int> kept) {
  std::stable_sort(slots.begin(), slots.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  CutOffKey key{kept_size, {}};
  CutOffEntry entry;
  entry.cost = cost;
  entry.kept = std::move(kept);
  for (auto& [size, members] : slots) {
    key.second.push_back(size);
    entry.parts.push_back(std::move(members));
  }
  auto found = table.find(key);
  if (found == table.end() || cost < found->second.cost) table[key] = std::move(entry);
}

}  // namespace detail

/// For the tree reachable from `root` in `adj`: every achievable way to
/// leave a part with the root and cut off k part groups, with the minimum
/// number of cuts for each (root size, descending group-size tuple) and one
/// witness realization per entry.  Groups larger than cap_slot and root
/// parts larger than cap_kept are discarded; cutting an edge at the root
/// itself costs root_cut_cost (used for auxiliary roots whose edges are not
/// real).  Ties keep the first realization in scan order.
inline CutOffTable cut_off_costs(const std::vector<std::vector<int>>& adj, int root, int k,
                                 int cap_kept = INT_MAX, int cap_slot = INT_MAX,
                                 long long root_cut_cost = 1) {
  // Iterative post-order over the tree.
  std::vector<int> order, parent(adj.size(), -1), stack{root};
  std::vector<char> seen(adj.size(), 0);
  seen[root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        stack.push_back(u);
      }
  }

  std::vector<int> perm(k);
  std::vector<CutOffTable> tables(adj.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    CutOffTable acc;
    acc[{1, std::vector<int>(k, 0)}] = CutOffEntry{0, {v}, std::vector<std::vector<int>>(k)};
    for (int u : adj[v]) {
      if (u == root || parent[u] != v) continue;
      long long cut_cost = v == root ? root_cut_cost : 1;
      CutOffTable fresh;
      for (const auto& [kv, ev] : acc) {
        for (const auto& [ku, eu] : tables[u]) {
          // The child's part either joins the root part (edge kept) or is
          // detached into one of the child's k groups (edge cut).
          for (int cut_slot = -1; cut_slot < k; ++cut_slot) {
            int kept_size = kv.first + (cut_slot < 0 ? ku.first : 0);
            if (kept_size > cap_kept) continue;
            std::vector<int> child_sizes = ku.second;
            if (cut_slot >= 0) {
              child_sizes[cut_slot] += ku.first;
              if (child_sizes[cut_slot] > cap_slot) continue;
            }
            long long cost = ev.cost + eu.cost + (cut_slot < 0 ? 0 : cut_cost);
            // Groups of the two sides pair up in every bijection; paired
            // groups share a destination cluster, so their sizes add.
            std::iota(perm.begin(), perm.end(), 0);
            do {
              std::vector<std::pair<int, std::vector<int>>> slots(k);
              bool ok = true;
              for (int j = 0; j < k && ok; ++j) {
                slots[j].first = kv.second[j] + child_sizes[perm[j]];
                if (slots[j].first > cap_slot) ok = false;
              }
              if (!ok) continue;
              std::vector<int> kept = ev.kept;
              if (cut_slot < 0) kept.insert(kept.end(), eu.kept.begin(), eu.kept.end());
              for (int j = 0; j < k; ++j) {
                slots[j].second = ev.parts[j];
                const auto& extra = eu.parts[perm[j]];
                slots[j].second.insert(slots[j].second.end(), extra.begin(), extra.end());
                if (cut_slot == perm[j])
                  slots[j].second.insert(slots[j].second.end(), eu.kept.begin(), eu.kept.end());
              }
              detail::relax_entry(fresh, kept_size, std::move(slots), cost, std::move(kept));
            } while (std::next_permutation(perm.begin(), perm.end()));
          }
        }
      }
      acc = std::move(fresh);
    }
    tables[v] = std::move(acc);
  }
  return tables[root];
}

namespace detail {

/// Minimum-cut distribution of one tree's table over p capacity-bounded
/// clusters: every reachable per-cluster red-demand vector, with the tree
/// table entry and group-to-cluster assignment realizing it cheapest.
struct TreeDistribution {
  struct Choice {
    const CutOffEntry* entry = nullptr;
    const CutOffKey* key = nullptr;
    std::vector<int> group_cluster;  // per table group, assigned cluster
    int own_cluster = -1;            // cluster receiving the kept part, -1 for none
  };
  std::map<std::vector<int>, std::pair<long long, Choice>> options;

  void add(const CutOffTable& table, int p, int cap, int own_cluster) {
    for (const auto& [key, entry] : table) {
      if (own_cluster < 0 && key.first != 1) continue;  // auxiliary root stays alone
      std::vector<int> demand(p, 0);
      if (own_cluster >= 0) {
        demand[own_cluster] = key.first - 1;  // kept reds join the own blue's cluster
        if (demand[own_cluster] > cap) continue;
      }
      Choice choice;
      choice.entry = &entry;
      choice.key = &key;
      choice.group_cluster.assign(key.second.size(), -1);
      choice.own_cluster = own_cluster;
      assign_groups(key, entry, 0, demand, choice, p, cap);
    }
  }

 private:
  void assign_groups(const CutOffKey& key, const CutOffEntry& entry, std::size_t g,
                     std::vector<int>& demand, TreeDistribution::Choice& choice, int p, int cap) {
    if (g == key.second.size()) {
      auto found = options.find(demand);
      if (found == options.end() || entry.cost < found->second.first)
        options[demand] = {entry.cost, choice};
      return;
    }
    if (key.second[g] == 0) {  // trailing empty groups: nothing to place
      assign_groups(key, entry, key.second.size(), demand, choice, p, cap);
      return;
    }
    for (int j = 0; j < p; ++j) {
      if (demand[j] + key.second[g] > cap) continue;
      demand[j] += key.second[g];
      choice.group_cluster[g] = j;
      assign_groups(key, entry, g + 1, demand, choice, p, cap);
      choice.group_cluster[g] = -1;
      demand[j] -= key.second[g];
    }
  }
};

}  // namespace detail

/// Exact solver for two colors in ratio 1:c, parameterized by the number of
/// clusters p (the count of the rarer color).  Enumerates the ways to
/// separate the rare vertices into distinct trees with at most p-1 edge
/// removals, splits each resulting tree via cut_off_costs (trees without a
/// rare vertex hang under an auxiliary root whose edges cut for free), and
/// distributes the parts over the p clusters.  Refuses p beyond the ceiling
/// (default FCC_MAX_P, 4); ratio 1:1 delegates to the matching solver.
inline SolveResult solve_one_c(const ColoredForest& f, long long max_p = env_ceiling("FCC_MAX_P", 4)) {
  ColorSpec spec = derive_color_spec(f);
  if (f.k != 2) fail(Errc::WrongRatio, "this solver requires exactly two colors in ratio 1:c");
  if (spec.d == 2) return solve_one_one(f);
  int blue = spec.ratio[0] == 1 ? 0 : spec.ratio[1] == 1 ? 1 : -1;
  if (blue < 0) fail(Errc::WrongRatio, "this solver requires exactly two colors in ratio 1:c");
  int c = static_cast<int>(spec.d) - 1;
  int p = static_cast<int>(f.color_count[blue]);
  if (p > max_p)
    fail(Errc::TooManyClusters, std::to_string(p) + " clusters exceed the ceiling " +
                                    std::to_string(max_p) + " (raise FCC_MAX_P)");

  std::vector<int> blues;
  for (int v = 0; v < f.n; ++v)
    if (f.color[v] == blue) blues.push_back(v);

  long long best_total = -1;
  Assignment best;

  // Candidate separator subsets, by size then lexicographically.
  int m = static_cast<int>(f.edges.size());
  std::vector<int> subset;
  auto try_subset = [&]() {
    std::vector<std::vector<int>> adj(f.n + 1);
    std::vector<char> removed(m, 0);
    for (int e : subset) removed[e] = 1;
    for (int e = 0; e < m; ++e) {
      if (removed[e]) continue;
      adj[f.edges[e].first].push_back(f.edges[e].second);
      adj[f.edges[e].second].push_back(f.edges[e].first);
    }

    // Every tree may contain at most one rare vertex; rare-free trees hang
    // under the auxiliary root z = n.
    std::vector<int> tree_of(f.n, -1);
    for (std::size_t i = 0; i < blues.size(); ++i) {
      std::vector<int> stack{blues[i]};
      tree_of[blues[i]] = static_cast<int>(i);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v]) {
          if (tree_of[u] == static_cast<int>(i)) continue;
          if (tree_of[u] != -1) return;  // two rare vertices still connected
          tree_of[u] = static_cast<int>(i);
          stack.push_back(u);
        }
      }
    }
    int z = f.n;
    for (int v = 0; v < f.n; ++v) {
      if (tree_of[v] != -1) continue;
      // v is the smallest vertex of an undiscovered rare-free tree.
      adj[z].push_back(v);
      adj[v].push_back(z);
      std::vector<int> stack{v};
      tree_of[v] = p;
      while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        for (int u : adj[w])
          if (u != z && tree_of[u] == -1) {
            tree_of[u] = p;
            stack.push_back(u);
          }
      }
    }

    // Per-tree split tables, then distribution over cluster capacities.
    std::vector<CutOffTable> tables(p + 1);
    std::vector<detail::TreeDistribution> dist(p + 1);
    for (int i = 0; i < p; ++i) {
      tables[i] = cut_off_costs(adj, blues[i], p, c + 1, c);
      dist[i].add(tables[i], p, c, i);
    }
    bool has_z = !adj[z].empty();
    if (has_z) {
      tables[p] = cut_off_costs(adj, z, p, c + 1, c, 0);
      dist[p].add(tables[p], p, c, -1);
    }

    using CapState = std::vector<int>;
    std::map<CapState, long long> reach;
    std::vector<std::map<CapState, std::pair<CapState, detail::TreeDistribution::Choice>>> trace;
    reach[CapState(p, c)] = static_cast<long long>(subset.size());
    int rounds = has_z ? p + 1 : p;
    for (int t = 0; t < rounds; ++t) {
      std::map<CapState, long long> fresh;
      std::map<CapState, std::pair<CapState, detail::TreeDistribution::Choice>> tr;
      for (const auto& [cap, cost] : reach) {
        for (const auto& [demand, option] : dist[t].options) {
          CapState next = cap;
          bool ok = true;
          for (int j = 0; j < p && ok; ++j) {
            next[j] -= demand[j];
            if (next[j] < 0) ok = false;
          }
          if (!ok) continue;
          long long cand = cost + option.first;
          auto found = fresh.find(next);
          if (found == fresh.end() || cand < found->second) {
            fresh[next] = cand;
            tr[next] = {cap, option.second};
          }
        }
      }
      reach = std::move(fresh);
      trace.push_back(std::move(tr));
    }

    CapState done(p, 0);
    auto hit = reach.find(done);
    if (hit == reach.end()) return;  // no feasible distribution for this separator
    if (best_total >= 0 && hit->second >= best_total) return;
    best_total = hit->second;

    best.assign(f.n, -1);
    CapState cur = done;
    for (int t = rounds; t > 0; --t) {
      const auto& [prev, choice] = trace[t - 1].at(cur);
      if (choice.own_cluster >= 0)
        for (int v : choice.entry->kept) best[v] = choice.own_cluster;
      for (std::size_t g = 0; g < choice.group_cluster.size(); ++g)
        for (int v : choice.entry->parts[g])
          best[v] = choice.group_cluster[g];
      cur = prev;
    }
  };

  std::function<void(int, int)> pick = [&](int start, int left) {
    if (left == 0) {
      try_subset();
      return;
    }
    try_subset();
    for (int e = start; e < m; ++e) {
      subset.push_back(e);
      pick(e + 1, left - 1);
      subset.pop_back();
    }
  };
  pick(0, p - 1);

  if (best_total < 0) fail(Errc::NoFairAssembly, "internal error: no clustering found for a feasible instance");
  return finalize_result(f, best, "few_clusters");
}

}  // namespace fcc
