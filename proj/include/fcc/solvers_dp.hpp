#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fcc/core.hpp"
#include "fcc/join.hpp"
#include "fcc/solvers_linear.hpp"

namespace fcc {

namespace detail {

// ---------------------------------------------------------------------------
// Ratio 1:2.  Components of a splitting carry at most one blue and two red
// vertices; tables are indexed by x = (#blue-red components) - (#lone-red
// components), the only quantity the assembly step needs.
// ---------------------------------------------------------------------------

struct OneTwoDP {
  // Head masses in fixed order: none, b, r, br, rr (blue count, red count).
  static constexpr int kMass[5][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}};

  const ColoredForest& f;
  RootedForest rf;
  int blue, red;  // color ids with ratio part 1 and 2
  long long n, width;

  std::vector<std::array<CostTable, 5>> tables;  // per vertex, per head (0 = closed)
  std::vector<JoinTrace> fold;
  std::vector<std::vector<int>> children;
  std::vector<std::map<long long, std::pair<int, long long>>> closing;  // x -> (mass, x before close)
  std::vector<std::pair<int, int>> cuts;

  explicit OneTwoDP(const ColoredForest& forest) : f(forest), rf(root_forest(forest)) {
    ColorSpec spec = derive_color_spec(f);
    if (f.k != 2 || spec.d != 3)
      fail(Errc::WrongRatio, "this solver requires exactly two colors in ratio 1:2");
    blue = spec.ratio[0] == 1 ? 0 : 1;
    red = 1 - blue;
    n = f.n;
    width = 2 * n + 1;
    tables.resize(f.n);
    fold.resize(f.n);
    children.resize(f.n);
    closing.resize(f.n);
  }

  long long encode(int mass, long long x) const { return mass * width + (x + n); }
  int mass_of(int b, int r) const {
    for (int i = 0; i < 5; ++i)
      if (kMass[i][0] == b && kMass[i][1] == r) return i;
    return -1;
  }
  bool is_blue(int v) const { return f.color[v] == blue; }

  CostTable contribution(int u) const {
    CostTable c(0, 5 * width - 1);
    for (int m = 0; m < 5; ++m)
      for (long long x = -n; x <= n; ++x)
        c.relax(encode(m, x), tables[u][m].get(x));
    return c;
  }

  void run() {
    for (auto it = rf.order.rbegin(); it != rf.order.rend(); ++it) {
      int v = *it;
      for (int u : f.adj[v])
        if (u != rf.parent[v]) children[v].push_back(u);

      int cap_b = 1 - (is_blue(v) ? 1 : 0);
      int cap_r = 2 - (is_blue(v) ? 0 : 1);
      auto combine = [&](long long i1, long long i2, auto&& emit) {
        int m1 = static_cast<int>(i1 / width), m2 = static_cast<int>(i2 / width);
        long long x = (i1 % width - n) + (i2 % width - n);
        int b = kMass[m1][0] + kMass[m2][0], r = kMass[m1][1] + kMass[m2][1];
        if (b > cap_b || r > cap_r || x < -n || x > n) return;
        emit(encode(mass_of(b, r), x));
      };

      std::vector<CostTable> inputs;
      CostTable init(0, 5 * width - 1);
      init.at(encode(0, 0)) = 0;
      inputs.push_back(std::move(init));
      for (int u : children[v]) inputs.push_back(contribution(u));
      fold[v] = join_traced(inputs, combine, 0, 5 * width - 1);

      for (int m = 0; m < 5; ++m) tables[v][m] = CostTable(-n, n);

      // Heads containing v: strip v's own color from the head mass.
      for (int h = 1; h < 5; ++h) {
        int hb = kMass[h][0] - (is_blue(v) ? 1 : 0);
        int hr = kMass[h][1] - (is_blue(v) ? 0 : 1);
        if (hb < 0 || hr < 0) continue;
        int si = mass_of(hb, hr);
        for (long long x = -n; x <= n; ++x)
          tables[v][h].relax(x, fold[v].result.get(encode(si, x)));
      }

      // Closing v's component: g = accumulated mass plus v.  A closed br
      // shifts x up, a closed lone red shifts it down; cutting the parent
      // edge costs one unless v is a root.
      bool root = rf.parent[v] == -1;
      for (int si = 0; si < 5; ++si) {
        int gb = kMass[si][0] + (is_blue(v) ? 1 : 0);
        int gr = kMass[si][1] + (is_blue(v) ? 0 : 1);
        if (gb > 1 || gr > 2) continue;
        long long shift = (gb == 1 && gr == 1) ? 1 : (gb == 0 && gr == 1) ? -1 : 0;
        for (long long x = -n; x <= n; ++x) {
          long long val = fold[v].result.get(encode(si, x));
          if (val >= CostTable::INF) continue;
          long long nx = x + shift;
          if (nx < -n || nx > n) continue;
          long long cand = val + (root ? 0 : 1);
          if (cand < tables[v][0].at(nx)) {
            tables[v][0].at(nx) = cand;
            closing[v][nx] = {si, x};
          }
        }
      }
    }
  }

  void reconstruct(int v, int head, long long x) {
    long long target;
    if (head == 0) {
      auto [si, x0] = closing[v].at(x);
      if (rf.parent[v] != -1) cuts.emplace_back(rf.parent[v], v);
      target = encode(si, x0);
    } else {
      int hb = kMass[head][0] - (is_blue(v) ? 1 : 0);
      int hr = kMass[head][1] - (is_blue(v) ? 0 : 1);
      target = encode(mass_of(hb, hr), x);
    }
    auto picks = fold[v].reconstruct(target);
    for (std::size_t i = 0; i < children[v].size(); ++i) {
      int m = static_cast<int>(picks[i + 1] / width);
      long long xu = picks[i + 1] % width - n;
      reconstruct(children[v][i], m, xu);
    }
  }
};

}  // namespace detail

/// Exact solver for ratio 1:2.
///
/// Phase one computes, per number-difference x of blue-red versus lone-red
/// components, the minimum edge cuts of any splitting into components with
/// at most one blue and two red vertices.  Phase two merges components into
/// fair clusters; only a surplus of blue-red components forces extra cuts,
/// one per two surplus components (splitting a red-red component feeds two
/// lone reds).  The best x minimizes cuts plus surplus cost.
inline SolveResult solve_one_two(const ColoredForest& f) {
  detail::OneTwoDP dp(f);
  dp.run();

  std::vector<CostTable> root_tables;
  for (int r : dp.rf.roots) root_tables.push_back(dp.tables[r][0]);
  auto ftrace = join_traced(
      root_tables, [](long long a, long long b, auto&& emit) { emit(a + b); }, -dp.n, dp.n);

  long long best_x = 0, best_total = CostTable::INF;
  for (long long x = -dp.n; x <= dp.n; ++x) {
    long long cuts = ftrace.result.get(x);
    if (cuts >= CostTable::INF) continue;
    if (x % 2 != 0)
      fail(Errc::ParityViolation, "internal error: odd blue-red component imbalance");
    long long total = cuts + std::max(0LL, x / 2);
    if (total < best_total) {
      best_total = total;
      best_x = x;
    }
  }
  if (best_total >= CostTable::INF)
    fail(Errc::NoFairAssembly, "internal error: no splitting found for a feasible instance");

  auto picks = ftrace.reconstruct(best_x);
  for (std::size_t i = 0; i < dp.rf.roots.size(); ++i) dp.reconstruct(dp.rf.roots[i], 0, picks[i]);

  // Group the split components by composition, then merge: blue with
  // red-red, blue-red with lone red, a leftover blue with two lone reds, and
  // a leftover blue-red with half of a split red-red component.
  Assignment comp = components_after_cuts(f, dp.cuts);
  int nc = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> members(nc);
  std::vector<int> blues(nc, 0);
  for (int v = 0; v < f.n; ++v) {
    members[comp[v]].push_back(v);
    blues[comp[v]] += dp.is_blue(v) ? 1 : 0;
  }
  std::vector<int> B, R, RR, BR, BRR;
  for (int c = 0; c < nc; ++c) {
    int b = blues[c], r = static_cast<int>(members[c].size()) - b;
    if (b == 1 && r == 0) B.push_back(c);
    else if (b == 0 && r == 1) R.push_back(c);
    else if (b == 0 && r == 2) RR.push_back(c);
    else if (b == 1 && r == 1) BR.push_back(c);
    else if (b == 1 && r == 2) BRR.push_back(c);
    else fail(Errc::ParityViolation, "internal error: component exceeds one blue / two red");
  }

  Assignment a(f.n, -1);
  int cluster = 0;
  auto place = [&](const std::vector<int>& comps_to_merge) {
    for (int c : comps_to_merge)
      for (int v : members[c]) a[v] = cluster;
    ++cluster;
  };
  for (int c : BRR) place({c});
  std::size_t ib = 0, irr = 0, ibr = 0, ir = 0;
  while (ib < B.size() && irr < RR.size()) place({B[ib++], RR[irr++]});
  while (ibr < BR.size() && ir < R.size()) place({BR[ibr++], R[ir++]});
  while (ib < B.size()) {
    if (ir + 2 > R.size()) fail(Errc::ParityViolation, "internal error: assembly counts off");
    place({B[ib++], R[ir], R[ir + 1]});
    ir += 2;
  }
  while (ibr < BR.size()) {
    if (irr >= RR.size() || ibr + 2 > BR.size())
      fail(Errc::ParityViolation, "internal error: assembly counts off");
    int rr = RR[irr++];
    for (int v : members[BR[ibr]]) a[v] = cluster;
    a[members[rr][0]] = cluster++;
    for (int v : members[BR[ibr + 1]]) a[v] = cluster;
    a[members[rr][1]] = cluster++;
    ibr += 2;
  }
  if (ib != B.size() || ir != R.size() || irr != RR.size() || ibr != BR.size())
    fail(Errc::ParityViolation, "internal error: assembly counts off");

  return finalize_result(f, a, "one_two");
}

// ---------------------------------------------------------------------------
// General ratios: splitting DP over partition colorings.
// ---------------------------------------------------------------------------

/// Mixed-radix codec for set colorings bounded per color by `caps`.
/// Id 0 is the all-zero coloring.
struct ColoringCodec {
  std::vector<long long> caps;
  std::vector<long long> mult;
  long long count = 1;

  explicit ColoringCodec(std::vector<long long> caps_) : caps(std::move(caps_)) {
    mult.resize(caps.size());
    for (std::size_t i = 0; i < caps.size(); ++i) {
      mult[i] = count;
      count *= caps[i] + 1;
    }
  }

  long long encode(const std::vector<long long>& c) const {
    long long id = 0;
    for (std::size_t i = 0; i < caps.size(); ++i) id += c[i] * mult[i];
    return id;
  }
  std::vector<long long> decode(long long id) const {
    std::vector<long long> c(caps.size());
    for (std::size_t i = 0; i < caps.size(); ++i) {
      c[i] = id / mult[i] % (caps[i] + 1);
    }
    return c;
  }
  /// Component-wise sum, or -1 when any color exceeds its cap.
  long long add(long long a, long long b) const {
    auto ca = decode(a), cb = decode(b);
    long long id = 0;
    for (std::size_t i = 0; i < caps.size(); ++i) {
      long long s = ca[i] + cb[i];
      if (s > caps[i]) return -1;
      id += s * mult[i];
    }
    return id;
  }
  long long unit(int color) const { return mult[color]; }
  long long size_of(long long id) const {
    long long s = 0;
    for (long long part : decode(id)) s += part;
    return s;
  }
};

/// Sorted multiset of set-coloring ids: the coloring of a partition.
using PartitionKey = std::vector<long long>;

inline PartitionKey merge_keys(const PartitionKey& a, const PartitionKey& b) {
  PartitionKey out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline PartitionKey insert_key(PartitionKey key, long long id) {
  key.insert(std::upper_bound(key.begin(), key.end(), id), id);
  return key;
}

/// Phase one for arbitrary ratios: for every achievable partition coloring
/// (multiset of per-component color counts, bounded by `caps`), the minimum
/// number of edges any splitting realizing it must cut.  Tables are sparse;
/// iteration order is fixed so ties resolve deterministically.
struct SplittingDP {
  using State = std::pair<long long, PartitionKey>;  // open head mass, closed components

  struct ChildPick {
    State prev;
    long long head = 0;
    PartitionKey pc;
  };

  const ColoredForest& f;
  ColoringCodec codec;
  RootedForest rf;
  std::vector<std::map<long long, std::map<PartitionKey, long long>>> tables;
  std::vector<std::vector<std::map<State, ChildPick>>> trace;
  std::vector<std::map<PartitionKey, State>> closing;
  std::vector<std::vector<int>> children;
  std::map<PartitionKey, long long> forest;  // whole-forest colorings -> min cuts
  std::vector<std::map<PartitionKey, std::pair<PartitionKey, PartitionKey>>> forest_trace;
  std::vector<std::pair<int, int>> cuts;

  SplittingDP(const ColoredForest& forest, std::vector<long long> caps)
      : f(forest), codec(std::move(caps)), rf(root_forest(forest)) {
    tables.resize(f.n);
    trace.resize(f.n);
    closing.resize(f.n);
    children.resize(f.n);
  }

  void run() {
    for (auto it = rf.order.rbegin(); it != rf.order.rend(); ++it) {
      int v = *it;
      for (int u : f.adj[v])
        if (u != rf.parent[v]) children[v].push_back(u);
      trace[v].resize(children[v].size());

      long long vunit = codec.unit(f.color[v]);
      std::map<State, long long> acc;
      acc[{0, {}}] = 0;
      for (std::size_t ci = 0; ci < children[v].size(); ++ci) {
        int u = children[v][ci];
        std::map<State, long long> fresh;
        auto& tr = trace[v][ci];
        for (auto& [s1, val1] : acc) {
          for (auto& [head, per_pc] : tables[u]) {
            long long mass = codec.add(s1.first, head);
            if (mass < 0 || codec.add(mass, vunit) < 0) continue;
            for (auto& [pc, val2] : per_pc) {
              State ns{mass, merge_keys(s1.second, pc)};
              long long cand = val1 + val2;
              auto found = fresh.find(ns);
              if (found == fresh.end() || cand < found->second) {
                fresh[ns] = cand;
                tr[ns] = ChildPick{s1, head, pc};
              }
            }
          }
        }
        acc = std::move(fresh);
      }

      bool root = rf.parent[v] == -1;
      for (auto& [st, val] : acc) {
        long long h = codec.add(st.first, vunit);
        auto& slot = tables[v][h];
        auto found = slot.find(st.second);
        if (found == slot.end() || val < found->second) slot[st.second] = val;

        PartitionKey closed = insert_key(st.second, h);
        long long cand = val + (root ? 0 : 1);
        auto& zero = tables[v][0];
        auto zfound = zero.find(closed);
        if (zfound == zero.end() || cand < zfound->second) {
          zero[closed] = cand;
          closing[v][closed] = st;
        }
      }
    }

    // Combine the per-tree tables of closed components.
    std::map<PartitionKey, long long> acc;
    bool first = true;
    for (int r : rf.roots) {
      auto& rt = tables[r][0];
      if (first) {
        acc = rt;
        first = false;
        continue;
      }
      std::map<PartitionKey, long long> fresh;
      std::map<PartitionKey, std::pair<PartitionKey, PartitionKey>> tr;
      for (auto& [pcA, vA] : acc)
        for (auto& [pcB, vB] : rt) {
          PartitionKey merged = merge_keys(pcA, pcB);
          long long cand = vA + vB;
          auto found = fresh.find(merged);
          if (found == fresh.end() || cand < found->second) {
            fresh[merged] = cand;
            tr[merged] = {pcA, pcB};
          }
        }
      acc = std::move(fresh);
      forest_trace.push_back(std::move(tr));
    }
    forest = std::move(acc);
  }

  /// Cut edges of the recorded optimal splitting for a whole-forest coloring.
  std::vector<std::pair<int, int>> reconstruct(const PartitionKey& target) {
    cuts.clear();
    std::vector<PartitionKey> per_root(rf.roots.size());
    PartitionKey cur = target;
    for (std::size_t r = rf.roots.size(); r > 1; --r) {
      auto& rec = forest_trace[r - 2].at(cur);
      per_root[r - 1] = rec.second;
      cur = rec.first;
    }
    per_root[0] = cur;
    for (std::size_t i = 0; i < rf.roots.size(); ++i) rec_vertex(rf.roots[i], 0, per_root[i]);
    return cuts;
  }

 private:
  void rec_vertex(int v, long long head, const PartitionKey& pc) {
    State st;
    if (head == 0) {
      st = closing[v].at(pc);
      if (rf.parent[v] != -1) cuts.emplace_back(rf.parent[v], v);
    } else {
      auto hc = codec.decode(head);
      --hc[f.color[v]];
      st = State{codec.encode(hc), pc};
    }
    for (std::size_t ci = children[v].size(); ci > 0; --ci) {
      auto& pick = trace[v][ci - 1].at(st);
      rec_vertex(children[v][ci - 1], pick.head, pick.pc);
      st = pick.prev;
    }
  }
};

namespace detail {

/// Which whole-forest colorings merge into clusters that are each exactly
/// the ratio coloring, and through which pair merges.
struct ExactAssembly {
  const ColoringCodec& codec;
  long long full;
  std::map<PartitionKey, char> memo;  // 1 yes, 2 no
  std::map<PartitionKey, std::pair<long long, long long>> plan;

  ExactAssembly(const ColoringCodec& c, long long full_id) : codec(c), full(full_id) {}

  bool assemblable(const PartitionKey& key) {
    bool all_full = std::all_of(key.begin(), key.end(), [&](long long id) { return id == full; });
    if (all_full) return true;
    auto found = memo.find(key);
    if (found != memo.end()) return found->second == 1;
    std::set<std::pair<long long, long long>> tried;
    for (std::size_t i = 0; i < key.size(); ++i)
      for (std::size_t j = i + 1; j < key.size(); ++j) {
        if (key[i] == full || key[j] == full) continue;
        auto pair_ids = std::make_pair(key[i], key[j]);
        if (!tried.insert(pair_ids).second) continue;
        long long merged = codec.add(key[i], key[j]);
        if (merged < 0) continue;
        PartitionKey next = key;
        next.erase(next.begin() + j);
        next.erase(next.begin() + i);
        next = insert_key(std::move(next), merged);
        if (assemblable(next)) {
          memo[key] = 1;
          plan[key] = pair_ids;
          return true;
        }
      }
    memo[key] = 2;
    return false;
  }
};

}  // namespace detail

/// Exact solver for any color ratio with bounded minimum cluster size d:
/// phase one enumerates achievable partition colorings with their minimum
/// cuts, phase two keeps those whose components merge into fair clusters and
/// picks the cheapest.  Ratio 1:1 delegates to the matching solver.  The
/// cluster-size ceiling defaults to FCC_MAX_D (8).
inline SolveResult solve_general(const ColoredForest& f, long long max_d = env_ceiling("FCC_MAX_D", 8)) {
  ColorSpec spec = derive_color_spec(f);
  if (spec.d == 2) return solve_one_one(f);
  if (spec.d > max_d)
    fail(Errc::TooLargeClusterSize,
         "minimum fair cluster size " + std::to_string(spec.d) + " exceeds the ceiling " +
             std::to_string(max_d) +
             " (raise FCC_MAX_D, or use the few-clusters solver for two-color 1:c instances)");

  SplittingDP dp(f, spec.ratio);
  dp.run();

  detail::ExactAssembly assembly(dp.codec, dp.codec.encode(spec.ratio));
  const PartitionKey* best = nullptr;
  long long best_cuts = CostTable::INF;
  for (auto& [pc, cut_count] : dp.forest) {
    if (cut_count >= best_cuts) continue;
    if (!assembly.assemblable(pc)) continue;
    best = &pc;
    best_cuts = cut_count;
  }
  if (!best) fail(Errc::NoFairAssembly, "internal error: no assemblable splitting found");

  auto cut_edges = dp.reconstruct(*best);
  Assignment comp = components_after_cuts(f, cut_edges);
  int nc = *std::max_element(comp.begin(), comp.end()) + 1;

  struct Unit {
    long long id;
    int min_vertex;
    std::vector<int> members;
  };
  std::vector<Unit> units(nc);
  for (int c = 0; c < nc; ++c) units[c].min_vertex = -1;
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

  {
    PartitionKey sanity;
    for (auto& u : units) sanity.push_back(u.id);
    std::sort(sanity.begin(), sanity.end());
    if (sanity != *best)
      fail(Errc::ParityViolation, "internal error: reconstructed splitting mismatches its coloring");
  }

  // Replay the recorded merge plan on the actual components, always merging
  // the units with the smallest minimum vertex among the required colorings.
  PartitionKey cur = *best;
  long long full = dp.codec.encode(spec.ratio);
  while (!std::all_of(cur.begin(), cur.end(), [&](long long id) { return id == full; })) {
    auto [g1, g2] = assembly.plan.at(cur);
    int i1 = -1, i2 = -1;
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (units[i].id == g1 && (i1 == -1 || units[i].min_vertex < units[i1].min_vertex))
        i1 = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (static_cast<int>(i) == i1) continue;
      if (units[i].id == g2 && (i2 == -1 || units[i].min_vertex < units[i2].min_vertex))
        i2 = static_cast<int>(i);
    }
    if (i1 == -1 || i2 == -1) fail(Errc::ParityViolation, "internal error: merge plan lost a unit");
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

  Assignment a(f.n, -1);
  int cluster = 0;
  std::sort(units.begin(), units.end(), [](const Unit& x, const Unit& y) { return x.min_vertex < y.min_vertex; });
  for (auto& u : units) {
    for (int v : u.members) a[v] = cluster;
    ++cluster;
  }
  return finalize_result(f, a, "general");
}

}  // namespace fcc
