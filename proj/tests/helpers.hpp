#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fcc/core.hpp"

namespace fcc::testing {

/// Colors from a compact string: 'r' -> 0, 'b' -> 1, then 'g', 'y', 'p'.
inline std::vector<int> colors(const std::string& s) {
  const std::string alphabet = "rbgyp";
  std::vector<int> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<int>(alphabet.find(c)));
  return out;
}

/// Path 0-1-...-(n-1) over the given colors.
inline ColoredForest path(const std::string& cs) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < static_cast<int>(cs.size()); ++i) edges.emplace_back(i, i + 1);
  return make_forest(colors(cs), edges);
}

/// Star with vertex 0 as center.
inline ColoredForest star(const std::string& cs) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < static_cast<int>(cs.size()); ++i) edges.emplace_back(0, i);
  return make_forest(colors(cs), edges);
}

/// The two-edge example forest: vertices r r b b, edges 0-1 and 2-3.
inline ColoredForest two_pairs() {
  return make_forest(colors("rrbb"), {{0, 1}, {2, 3}});
}

inline std::uint64_t mix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random forest with exact color counts ratio * (n / sum).
/// Roughly three quarters of the possible attachment edges are kept, so
/// multi-component instances are common.
inline ColoredForest random_forest(int n, const std::vector<long long>& ratio, std::uint64_t seed) {
  long long d = 0;
  for (long long r : ratio) d += r;
  std::vector<int> cs;
  for (std::size_t c = 0; c < ratio.size(); ++c)
    cs.insert(cs.end(), static_cast<std::size_t>(ratio[c] * (n / d)), static_cast<int>(c));
  std::uint64_t s = seed;
  for (int i = n - 1; i > 0; --i) std::swap(cs[i], cs[mix64(s) % (i + 1)]);
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v)
    if (mix64(s) % 4 != 0) edges.emplace_back(static_cast<int>(mix64(s) % v), v);
  return make_forest(cs, edges);
}

/// Deterministic random tree of diameter <= 3: two adjacent centers with
/// leaves hung on either side (or a star when one side gets none).
inline ColoredForest random_double_star(int n, const std::vector<long long>& ratio, std::uint64_t seed) {
  long long d = 0;
  for (long long r : ratio) d += r;
  std::vector<int> cs;
  for (std::size_t c = 0; c < ratio.size(); ++c)
    cs.insert(cs.end(), static_cast<std::size_t>(ratio[c] * (n / d)), static_cast<int>(c));
  std::uint64_t s = seed;
  for (int i = n - 1; i > 0; --i) std::swap(cs[i], cs[mix64(s) % (i + 1)]);
  std::vector<std::pair<int, int>> edges;
  edges.emplace_back(0, 1);
  for (int v = 2; v < n; ++v) edges.emplace_back(mix64(s) % 2, v);
  return make_forest(cs, edges);
}

}  // namespace fcc::testing
