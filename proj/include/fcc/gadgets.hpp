#pragma once

// Instance generators for the hardness-reduction families, each emitting the
// closed-form optimal-cost threshold of its construction, plus a seeded
// random-forest generator.  All generators are deterministic functions of
// their inputs; the reduction gadgets also carry an exhaustively verified
// yes/no label (and, for yes-instances, an explicit optimal witness) whenever
// the underlying number-partitioning question is small enough to decide.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace fcc {

/// A 3-Partition question: can the 3p numbers `a` be grouped into p triples,
/// each summing to B?  Validity requires sum(a) = pB and B/4 < a_i < B/2 for
/// every i (so any group summing to B has exactly three members).
struct ThreePartitionSpec {
  long long B = 0;
  std::vector<long long> a;

  long long p() const { return static_cast<long long>(a.size()) / 3; }
};

inline void validate_three_partition(const ThreePartitionSpec& spec) {
  if (spec.a.empty() || spec.a.size() % 3 != 0)
    fail(Errc::BadSpec, "the number list must hold 3p values for some p >= 1");
  if (spec.B < 1) fail(Errc::BadSpec, "target sum B must be positive");
  long long sum = std::accumulate(spec.a.begin(), spec.a.end(), 0LL);
  if (sum != spec.p() * spec.B)
    fail(Errc::BadSpec, "numbers sum to " + std::to_string(sum) + ", expected p*B = " +
                            std::to_string(spec.p() * spec.B));
  for (long long v : spec.a)
    if (4 * v <= spec.B || 2 * v >= spec.B)
      fail(Errc::BadSpec, "every number must satisfy B/4 < a_i < B/2; " + std::to_string(v) +
                              " violates this for B = " + std::to_string(spec.B));
}

/// Exhaustive 3-Partition decision: the grouping into triples of sum B if one
/// exists, otherwise nullopt.  Intended for small p (the search is exponential
/// in p); generators only call it for p <= 4.
inline std::optional<std::vector<std::array<int, 3>>> three_partition_triples(
    const ThreePartitionSpec& spec) {
  validate_three_partition(spec);
  int count = static_cast<int>(spec.a.size());
  std::vector<bool> used(count, false);
  std::vector<std::array<int, 3>> triples;
  auto rec = [&](auto&& self, int placed) -> bool {
    if (placed == count) return true;
    int i = 0;
    while (used[i]) ++i;
    used[i] = true;
    for (int j = i + 1; j < count; ++j) {
      if (used[j]) continue;
      used[j] = true;
      for (int k = j + 1; k < count; ++k) {
        if (used[k] || spec.a[i] + spec.a[j] + spec.a[k] != spec.B) continue;
        used[k] = true;
        triples.push_back({i, j, k});
        if (self(self, placed + 3)) return true;
        triples.pop_back();
        used[k] = false;
      }
      used[j] = false;
    }
    used[i] = false;
    return false;
  };
  if (rec(rec, 0)) return triples;
  return std::nullopt;
}

/// A generated reduction instance.  `threshold` is the construction's
/// closed-form optimal cost for yes-instances (absent where no closed form
/// exists); `is_yes` is set only when the 3-Partition question was decided
/// exhaustively; `witness` is an optimal clustering for decided yes-instances.
struct GadgetInstance {
  ColoredForest forest;
  std::optional<long long> threshold;
  std::optional<bool> is_yes;
  std::optional<Assignment> witness;
};

/// Shape of the red trees in the forest gadget.  The reduction works for any
/// tree shape, so the choice is exposed.
enum class TreeShape { path, star, caterpillar };

namespace detail {

constexpr int kRed = 0;
constexpr int kBlue = 1;

/// Appends a tree of `size` vertices [first, first+size) in the given shape.
/// A caterpillar uses a spine of ceil(size/2) vertices with the remaining
/// vertices attached round-robin as legs.
inline void append_tree(std::vector<std::pair<int, int>>& edges, int first, long long size,
                        TreeShape shape) {
  switch (shape) {
    case TreeShape::path:
      for (long long i = 1; i < size; ++i)
        edges.push_back({first + static_cast<int>(i) - 1, first + static_cast<int>(i)});
      break;
    case TreeShape::star:
      for (long long i = 1; i < size; ++i) edges.push_back({first, first + static_cast<int>(i)});
      break;
    case TreeShape::caterpillar: {
      long long spine = (size + 1) / 2;
      for (long long i = 1; i < spine; ++i)
        edges.push_back({first + static_cast<int>(i) - 1, first + static_cast<int>(i)});
      for (long long i = spine; i < size; ++i)
        edges.push_back({first + static_cast<int>((i - spine) % spine), first + static_cast<int>(i)});
      break;
    }
  }
}

/// Labels the instance when p is small enough and builds the plan of triples.
inline std::optional<std::vector<std::array<int, 3>>> decide_small(const ThreePartitionSpec& spec,
                                                                   std::optional<bool>& is_yes) {
  if (spec.p() > 4) return std::nullopt;
  auto triples = three_partition_triples(spec);
  is_yes = triples.has_value();
  return triples;
}

}  // namespace detail

/// One red tree of a_i vertices per number plus p isolated blue vertices
/// (color ratio 1:B).  A fair clustering of the threshold cost
/// p*B(B+1)/2 - p(B-3) exists iff the numbers partition into triples of sum
/// B: the clusters are then one blue vertex plus three whole trees, cutting
/// nothing, and any cheaper clustering is impossible since clusters must have
/// exactly B+1 vertices and the forest has only p(B-3) edges to keep.
inline GadgetInstance gen_forest_gadget(const ThreePartitionSpec& spec,
                                        TreeShape shape = TreeShape::path) {
  validate_three_partition(spec);
  long long p = spec.p(), B = spec.B;
  int reds = static_cast<int>(p * B);
  int n = reds + static_cast<int>(p);

  std::vector<int> color(n, detail::kRed);
  for (int v = reds; v < n; ++v) color[v] = detail::kBlue;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> tree_first(spec.a.size());
  int next = 0;
  for (std::size_t i = 0; i < spec.a.size(); ++i) {
    tree_first[i] = next;
    detail::append_tree(edges, next, spec.a[i], shape);
    next += static_cast<int>(spec.a[i]);
  }

  GadgetInstance g{make_forest(std::move(color), std::move(edges)),
                   p * B * (B + 1) / 2 - p * (B - 3), std::nullopt, std::nullopt};
  if (auto triples = detail::decide_small(spec, g.is_yes)) {
    Assignment a(n, 0);
    for (std::size_t t = 0; t < triples->size(); ++t) {
      for (int idx : (*triples)[t])
        for (long long v = 0; v < spec.a[idx]; ++v)
          a[tree_first[idx] + static_cast<int>(v)] = static_cast<int>(t);
      a[reds + static_cast<int>(t)] = static_cast<int>(t);
    }
    g.witness = std::move(a);
  }
  return g;
}

/// A single tree of diameter 4: one red star of a_i vertices per number, one
/// blue star of p vertices, and every red star center adjacent to the blue
/// center.  Threshold pB(B-1)/2 + 7(p-1): a yes-grouping keeps each triple's
/// stars whole, cuts the p-1 blue leaves and the 3(p-1) red center links of
/// the other clusters.
inline GadgetInstance gen_diam4_gadget(const ThreePartitionSpec& spec) {
  validate_three_partition(spec);
  long long p = spec.p(), B = spec.B;
  int reds = static_cast<int>(p * B);
  int blue_center = reds;
  int n = reds + static_cast<int>(p);

  std::vector<int> color(n, detail::kRed);
  for (int v = reds; v < n; ++v) color[v] = detail::kBlue;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> star_center(spec.a.size());
  int next = 0;
  for (std::size_t i = 0; i < spec.a.size(); ++i) {
    star_center[i] = next;
    detail::append_tree(edges, next, spec.a[i], TreeShape::star);
    edges.push_back({next, blue_center});
    next += static_cast<int>(spec.a[i]);
  }
  for (int v = blue_center + 1; v < n; ++v) edges.push_back({blue_center, v});

  GadgetInstance g{make_forest(std::move(color), std::move(edges)),
                   p * B * (B - 1) / 2 + 7 * (p - 1), std::nullopt, std::nullopt};
  if (auto triples = detail::decide_small(spec, g.is_yes)) {
    Assignment a(n, 0);
    for (std::size_t t = 0; t < triples->size(); ++t)
      for (int idx : (*triples)[t])
        for (long long v = 0; v < spec.a[idx]; ++v)
          a[star_center[idx] + static_cast<int>(v)] = static_cast<int>(t);
    // Blue center joins triple 0; each remaining cluster takes one blue leaf.
    a[blue_center] = 0;
    for (long long t = 1; t < p; ++t) a[blue_center + static_cast<int>(t)] = static_cast<int>(t);
    g.witness = std::move(a);
  }
  return g;
}

/// A single tree of maximum degree 5 (requires B divisible by 4).  Each
/// number gets a gadget: a center joined to the ends of five paths of a_i,
/// B/4, B/4, B/4, and B/4-1 vertices; consecutive gadgets are chained through
/// the free ends of their (B/4-1)-paths, and a path of 4p blue vertices hangs
/// off one degree-1 red vertex.  Cutting the 3p a_i-path links, the 3p-1
/// chain links, and the 4p-1 blue links leaves 3p cores of exactly B reds
/// plus the a_i-paths, which merge into fair clusters without further cuts
/// iff the numbers 3-partition.  That cut set has chi = 10p - 2 and total
/// cost 2p(B+1)(B-2) + 20p - 3, which is the emitted threshold.
inline GadgetInstance gen_deg5_gadget(const ThreePartitionSpec& spec) {
  validate_three_partition(spec);
  if (spec.B % 4 != 0)
    fail(Errc::BadSpec, "the degree-5 construction needs B divisible by 4; got B = " +
                            std::to_string(spec.B));
  long long p = spec.p(), B = spec.B;
  int count = static_cast<int>(spec.a.size());  // 3p gadgets
  long long q = B / 4;
  int reds = static_cast<int>(4 * p * B);  // each gadget has a_i + B vertices
  int blues = static_cast<int>(4 * p);
  int n = reds + blues;

  std::vector<int> color(n, detail::kRed);
  for (int v = reds; v < n; ++v) color[v] = detail::kBlue;
  std::vector<std::pair<int, int>> edges;

  // Appends a path of `len` vertices whose first vertex hangs off `attach`;
  // returns the id of the free end.
  int next = 0;
  auto attach_path = [&](int attach, long long len) {
    int first = next;
    edges.push_back({attach, first});
    for (long long i = 1; i < len; ++i)
      edges.push_back({first + static_cast<int>(i) - 1, first + static_cast<int>(i)});
    next += static_cast<int>(len);
    return next - 1;
  };

  std::vector<int> center(count), a_path_first(count), dangler(count);
  int blue_anchor_red = -1;
  for (int i = 0; i < count; ++i) {
    center[i] = next++;
    a_path_first[i] = next;
    attach_path(center[i], spec.a[i]);
    for (int t = 0; t < 3; ++t) {
      int free_end = attach_path(center[i], q);
      if (i == 0 && t == 0) blue_anchor_red = free_end;
    }
    dangler[i] = attach_path(center[i], q - 1);
  }
  for (int i = 0; i + 1 < count; ++i) edges.push_back({dangler[i], dangler[i + 1]});
  edges.push_back({blue_anchor_red, reds});
  for (int v = reds + 1; v < n; ++v) edges.push_back({v - 1, v});

  GadgetInstance g{make_forest(std::move(color), std::move(edges)),
                   2 * p * (B + 1) * (B - 2) + 20 * p - 3, std::nullopt, std::nullopt};
  if (auto triples = detail::decide_small(spec, g.is_yes)) {
    // Clusters 0..3p-1 are the gadget cores; 3p..4p-1 are the path triples.
    Assignment a(n, -1);
    for (int i = 0; i < count; ++i) {
      a[center[i]] = i;
      for (long long v = 0; v < spec.a[i]; ++v) a[a_path_first[i] + static_cast<int>(v)] = -1;
      for (int v = a_path_first[i] + static_cast<int>(spec.a[i]); v < center[i] + static_cast<int>(spec.a[i] + B); ++v)
        a[v] = i;
    }
    for (std::size_t t = 0; t < triples->size(); ++t)
      for (int idx : (*triples)[t])
        for (long long v = 0; v < spec.a[idx]; ++v)
          a[a_path_first[idx] + static_cast<int>(v)] = count + static_cast<int>(t);
    // The anchored blue joins gadget 0's core; the rest fill the remaining
    // cores, then the triples.
    a[reds] = 0;
    for (int j = 1; j < blues; ++j) a[reds + j] = j;
    g.witness = std::move(a);
  }
  return g;
}

/// A path instance from a doubled word: one color per distinct symbol, one
/// vertex per letter.  Every symbol must appear exactly twice (the 1-regular
/// restriction), so any fair clustering forms two clusters holding one copy
/// of each symbol; minimizing cost is the word's minimum color-change
/// two-coloring.  No closed-form threshold exists.
inline GadgetInstance gen_paintshop_path(const std::string& word) {
  if (word.empty()) fail(Errc::BadWord, "the word must not be empty");
  std::vector<int> color;
  std::vector<char> first_seen;
  for (char s : word) {
    auto it = std::find(first_seen.begin(), first_seen.end(), s);
    if (it == first_seen.end()) {
      first_seen.push_back(s);
      color.push_back(static_cast<int>(first_seen.size()) - 1);
    } else {
      color.push_back(static_cast<int>(it - first_seen.begin()));
    }
  }
  std::vector<long long> seen(first_seen.size(), 0);
  for (int c : color) ++seen[c];
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != 2)
      fail(Errc::BadWord, std::string("symbol '") + first_seen[i] + "' appears " +
                              std::to_string(seen[i]) + " times; each symbol must appear exactly twice");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < static_cast<int>(word.size()); ++v) edges.push_back({v - 1, v});
  return {make_forest(std::move(color), std::move(edges)), std::nullopt, std::nullopt,
          std::nullopt};
}

/// Edge shape of the seeded random generator.
enum class RandomShape { uniform, path, star };

namespace detail {

/// splitmix64 finalizer: the documented, platform-independent PRNG core.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic pseudo-random forest with exact color counts in the given
/// ratio.  `uniform` attaches each vertex to a uniformly random earlier
/// vertex or starts a new tree; `path` and `star` emit those single shapes.
/// Identical (n, ratio, shape, seed) inputs always produce identical forests.
inline ColoredForest gen_random_forest(int n, const std::vector<long long>& ratio,
                                       RandomShape shape, std::uint64_t seed) {
  if (n < 1) fail(Errc::InfeasibleRatio, "need at least one vertex");
  if (ratio.empty()) fail(Errc::InfeasibleRatio, "the ratio must have at least one part");
  long long d = 0;
  for (long long r : ratio) {
    if (r < 1) fail(Errc::InfeasibleRatio, "ratio parts must be positive");
    d += r;
  }
  if (n % d != 0)
    fail(Errc::InfeasibleRatio, "n = " + std::to_string(n) +
                                    " is not a multiple of the ratio total d = " + std::to_string(d));

  std::vector<int> color;
  color.reserve(n);
  for (std::size_t i = 0; i < ratio.size(); ++i)
    for (long long c = 0; c < n / d * ratio[i]; ++c) color.push_back(static_cast<int>(i));
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(detail::mix64(seed * 0x2545f4914f6cdd1dULL + i) % (i + 1));
    std::swap(color[i], color[j]);
  }

  std::vector<std::pair<int, int>> edges;
  switch (shape) {
    case RandomShape::uniform:
      for (int v = 1; v < n; ++v) {
        int r = static_cast<int>(detail::mix64(seed ^ (0x9e3779b97f4a7c15ULL * v)) % (v + 1));
        if (r != v) edges.push_back({r, v});
      }
      break;
    case RandomShape::path:
      for (int v = 1; v < n; ++v) edges.push_back({v - 1, v});
      break;
    case RandomShape::star:
      for (int v = 1; v < n; ++v) edges.push_back({0, v});
      break;
  }
  return make_forest(std::move(color), std::move(edges));
}

}  // namespace fcc
