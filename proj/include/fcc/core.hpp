#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace fcc {

using Rational = boost::rational<long long>;

// boost::rational (observed with Boost 1.74) predates C++20's rewritten
// comparison candidates: `rational == int` selects the reversed free
// operator==(Arg, rational), whose body re-enters itself with the arguments
// swapped back — infinite recursion.  These exact-match non-templates win
// overload resolution against Boost's templates and restore the intended
// value comparison.  Only == and != are affected; <, >, <=, >= never get
// reversed candidates.
inline bool operator==(const Rational& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const Rational& a, int b) { return a == static_cast<long long>(b); }
inline bool operator==(long long a, const Rational& b) { return b == a; }
inline bool operator==(int a, const Rational& b) { return b == a; }
inline bool operator!=(const Rational& a, long long b) { return !(a == b); }
inline bool operator!=(const Rational& a, int b) { return !(a == b); }
inline bool operator!=(long long a, const Rational& b) { return !(b == a); }
inline bool operator!=(int a, const Rational& b) { return !(b == a); }

/// Failure taxonomy shared by all modules.  Every throwing path in the
/// library raises Error with one of these codes; the CLI maps codes to
/// process exit status (input/usage problems -> 1, structurally valid but
/// unsolvable/unsupported instances -> 2).
enum class Errc {
  NotAForest,
  BadColor,
  DuplicateEdge,
  UnsupportedInstance,
  InfeasibleRatio,
  WrongRatio,
  DiameterTooLarge,
  NotATree,
  LengthMismatch,
  ParityViolation,
  NoFairAssembly,
  TooLargeClusterSize,
  TooManyClusters,
  TooLarge,
  BadSpec,
  BadWord,
  BadParams,
  UndefinedBound,
  NoExactSolverApplicable,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotAForest: return "NotAForest";
    case Errc::BadColor: return "BadColor";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::UnsupportedInstance: return "UnsupportedInstance";
    case Errc::InfeasibleRatio: return "InfeasibleRatio";
    case Errc::WrongRatio: return "WrongRatio";
    case Errc::DiameterTooLarge: return "DiameterTooLarge";
    case Errc::NotATree: return "NotATree";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ParityViolation: return "ParityViolation";
    case Errc::NoFairAssembly: return "NoFairAssembly";
    case Errc::TooLargeClusterSize: return "TooLargeClusterSize";
    case Errc::TooManyClusters: return "TooManyClusters";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadSpec: return "BadSpec";
    case Errc::BadWord: return "BadWord";
    case Errc::BadParams: return "BadParams";
    case Errc::UndefinedBound: return "UndefinedBound";
    case Errc::NoExactSolverApplicable: return "NoExactSolverApplicable";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// A vertex-colored forest.  Construct through make_forest, which validates
/// the input and builds the adjacency structure; treat instances as
/// immutable afterwards.
struct ColoredForest {
  int n = 0;                              // number of vertices, ids 0..n-1
  int k = 0;                              // number of colors, ids 0..k-1
  std::vector<int> color;                 // vertex -> color id
  std::vector<std::pair<int, int>> edges; // normalized u < v
  std::vector<std::vector<int>> adj;      // neighbor lists, ascending
  std::vector<long long> color_count;     // color id -> multiplicity

  long long m() const { return static_cast<long long>(edges.size()); }
};

/// Validates and builds a ColoredForest.
///
/// Requirements: color ids form a dense range 0..k-1 with every color
/// present; edges reference valid distinct endpoints, contain no duplicates
/// (in either orientation), and induce no cycle.
inline ColoredForest make_forest(std::vector<int> color, std::vector<std::pair<int, int>> edges) {
  ColoredForest f;
  if (color.size() > static_cast<std::size_t>(INT32_MAX))
    fail(Errc::TooLarge, "instance exceeds supported vertex count");
  f.n = static_cast<int>(color.size());

  int k = 0;
  for (int c : color) {
    if (c < 0) fail(Errc::BadColor, "negative color id");
    k = std::max(k, c + 1);
  }
  f.color_count.assign(k, 0);
  for (int c : color) ++f.color_count[c];
  for (int c = 0; c < k; ++c)
    if (f.color_count[c] == 0)
      fail(Errc::BadColor, "color ids must be dense: color " + std::to_string(c) + " unused");
  f.k = k;
  f.color = std::move(color);

  std::vector<int> parent(f.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::unordered_set<long long> seen;
  seen.reserve(edges.size() * 2);
  f.adj.assign(f.n, {});
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= f.n || b >= f.n)
      fail(Errc::ParseError, "edge endpoint out of range");
    if (a == b) fail(Errc::NotAForest, "self-loop at vertex " + std::to_string(a));
    int u = std::min(a, b), v = std::max(a, b);
    if (!seen.insert(static_cast<long long>(u) << 32 | static_cast<unsigned>(v)).second)
      fail(Errc::DuplicateEdge, "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    int ru = find(u), rv = find(v);
    if (ru == rv)
      fail(Errc::NotAForest, "edge " + std::to_string(u) + "-" + std::to_string(v) + " closes a cycle");
    parent[ru] = rv;
    f.edges.emplace_back(u, v);
    f.adj[u].push_back(v);
    f.adj[v].push_back(u);
  }
  std::sort(f.edges.begin(), f.edges.end());
  for (auto& a : f.adj) std::sort(a.begin(), a.end());
  return f;
}

/// The reduced color ratio c_1 : ... : c_k of an instance and the minimum
/// fair cluster size d = sum c_i.  Derived from the color multiplicities, so
/// d always divides n.
struct ColorSpec {
  std::vector<long long> ratio;
  long long d = 0;
};

inline ColorSpec derive_color_spec(const ColoredForest& f) {
  if (f.k < 2)
    fail(Errc::UnsupportedInstance, "instances need at least two colors (one color admits no fair ratio)");
  long long g = 0;
  for (long long c : f.color_count) g = std::gcd(g, c);
  ColorSpec s;
  s.ratio.reserve(f.k);
  for (long long c : f.color_count) {
    s.ratio.push_back(c / g);
    s.d += c / g;
  }
  return s;
}

/// Cluster assignment: vertex -> cluster label.  Labels may be arbitrary
/// non-negative ints; functions normalize internally.
using Assignment = std::vector<int>;

struct Cost {
  long long chi = 0;   // inter-cluster cost: edges with endpoints in different clusters
  long long psi = 0;   // intra-cluster cost: non-adjacent same-cluster pairs
  long long total = 0;
};

inline void check_assignment(const ColoredForest& f, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(f.n))
    fail(Errc::LengthMismatch, "assignment length " + std::to_string(a.size()) +
                                   " does not match vertex count " + std::to_string(f.n));
  for (int x : a)
    if (x < 0) fail(Errc::LengthMismatch, "negative cluster label");
}

/// Exact clustering cost: chi counts cut edges, psi counts same-cluster
/// vertex pairs that are not adjacent.
inline Cost cc_cost(const ColoredForest& f, const Assignment& a) {
  check_assignment(f, a);
  Cost c;
  std::unordered_map<int, long long> size;
  for (int v = 0; v < f.n; ++v) ++size[a[v]];
  long long pairs = 0;
  for (auto& [_, s] : size) pairs += s * (s - 1) / 2;
  for (auto& [u, v] : f.edges)
    if (a[u] != a[v]) ++c.chi;
  c.psi = pairs - (f.m() - c.chi);
  c.total = c.chi + c.psi;
  return c;
}

/// Exact fairness: every cluster's color counts are t * ratio for some
/// integer t >= 1 (equivalently, each cluster's color proportions equal the
/// global proportions).
inline bool is_fair(const ColoredForest& f, const Assignment& a) {
  check_assignment(f, a);
  ColorSpec spec = derive_color_spec(f);
  std::unordered_map<int, std::vector<long long>> counts;
  for (int v = 0; v < f.n; ++v) {
    auto& c = counts[a[v]];
    if (c.empty()) c.assign(f.k, 0);
    ++c[f.color[v]];
  }
  for (auto& [_, c] : counts) {
    long long s = std::accumulate(c.begin(), c.end(), 0LL);
    for (int i = 0; i < f.k; ++i)
      if (c[i] * spec.d != s * spec.ratio[i]) return false;
  }
  return true;
}

/// Cost of a clustering in which every cluster has exactly d vertices,
/// expressed through the number of cut edges alone:
///   cost = (d-1) * n / 2 - m + 2 * chi.
inline long long cost_by_cuts(long long n, long long m, long long d, long long chi) {
  return (d - 1) * n / 2 - m + 2 * chi;
}

/// Same identity for arbitrary cluster sizes:
///   cost = sum_S |S|(|S|-1)/2 - m + 2 * chi.
inline long long cost_from_sizes(const std::vector<long long>& sizes, long long m, long long chi) {
  long long pairs = 0;
  for (long long s : sizes) pairs += s * (s - 1) / 2;
  return pairs - m + 2 * chi;
}

/// Lower bound on the intra-cluster cost of any clustering with `parts`
/// clusters and `chi` cut edges:
///   psi >= n^2 / (2 parts) - n / 2 - m + chi,
/// tight exactly when all clusters have size n / parts.  If the largest
/// deviation `a` of any cluster size from n / parts is known, the bound
/// strengthens by a^2 * parts / (2 parts - 2).
inline Rational intra_lower_bound(long long n, long long m, long long chi, long long parts,
                                  long long deviation = 0) {
  if (parts < 1) fail(Errc::BadParams, "cluster count must be positive");
  Rational bound = Rational(n * n, 2 * parts) - Rational(n, 2) - m + chi;
  if (deviation != 0) {
    if (parts < 2) fail(Errc::BadParams, "size-deviation refinement needs at least two clusters");
    bound += Rational(deviation * deviation * parts, 2 * parts - 2);
  }
  return bound;
}

/// Per-color relative frequency band [lo_i, hi_i] a relaxed-fair cluster
/// must respect.  Constructors and validation live with the relaxed solver;
/// the struct sits here so the oracle can check bands without depending on
/// that module.
struct RelaxedParams {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

/// Per-cluster color counts: entry i is how many color-i vertices a set
/// contains.  The zero vector is never stored in a partition coloring.
using SetColoring = std::vector<int>;

/// Multiset of set colorings, kept sorted for canonical comparison.
using PartitionColoring = std::vector<SetColoring>;

inline long long coloring_size(const SetColoring& c) {
  return std::accumulate(c.begin(), c.end(), 0LL);
}

inline void canonicalize(PartitionColoring& p) { std::sort(p.begin(), p.end()); }

/// Derives the component assignment left after deleting `cut` edges
/// (pairs normalized u < v).  Component labels are dense, ordered by
/// smallest contained vertex.
inline Assignment components_after_cuts(const ColoredForest& f,
                                        const std::vector<std::pair<int, int>>& cut) {
  std::unordered_set<long long> removed;
  removed.reserve(cut.size() * 2);
  for (auto& [a, b] : cut) {
    int u = std::min(a, b), v = std::max(a, b);
    removed.insert(static_cast<long long>(u) << 32 | static_cast<unsigned>(v));
  }
  Assignment comp(f.n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < f.n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : f.adj[u]) {
        long long key = static_cast<long long>(std::min(u, v)) << 32 | static_cast<unsigned>(std::max(u, v));
        if (removed.count(key) || comp[v] != -1) continue;
        comp[v] = next;
        stack.push_back(v);
      }
    }
    ++next;
  }
  return comp;
}

/// Relabels an assignment to dense cluster ids 0..C-1, ordered by smallest
/// contained vertex; the canonical form used for byte-stable output.
inline Assignment normalize_assignment(const Assignment& a) {
  Assignment out(a.size());
  std::unordered_map<int, int> remap;
  int next = 0;
  for (std::size_t v = 0; v < a.size(); ++v) {
    auto [it, fresh] = remap.emplace(a[v], next);
    if (fresh) ++next;
    out[v] = it->second;
  }
  return out;
}

/// Iterative rooting of every component: parents, a traversal order with
/// parents before children, and one root per component (smallest vertex id).
/// Children appear in ascending id order throughout.
struct RootedForest {
  std::vector<int> parent;   // -1 at roots
  std::vector<int> order;    // BFS order, parents first
  std::vector<int> roots;
};

inline RootedForest root_forest(const ColoredForest& f) {
  RootedForest r;
  r.parent.assign(f.n, -2);
  r.order.reserve(f.n);
  for (int s = 0; s < f.n; ++s) {
    if (r.parent[s] != -2) continue;
    r.parent[s] = -1;
    r.roots.push_back(s);
    std::size_t head = r.order.size();
    r.order.push_back(s);
    while (head < r.order.size()) {
      int u = r.order[head++];
      for (int v : f.adj[u])
        if (r.parent[v] == -2) {
          r.parent[v] = u;
          r.order.push_back(v);
        }
    }
  }
  return r;
}

/// Environment-tunable ceiling (FCC_MAX_D, FCC_MAX_P): parses the variable
/// as a positive integer, falling back to the built-in default when unset or
/// malformed.
inline long long env_ceiling(const char* name, long long fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  long long v = std::strtoll(raw, &end, 10);
  return (end && *end == '\0' && v > 0) ? v : fallback;
}

/// Common solver envelope.  finalize_result re-verifies fairness, recomputes
/// the cost from scratch, and normalizes cluster labels, so no solver can
/// report an unfair clustering or a cost its assignment does not realize.
struct SolveResult {
  Assignment assignment;
  Cost cost;
  std::string solver;
};

inline SolveResult finalize_result(const ColoredForest& f, const Assignment& a, std::string solver) {
  SolveResult r;
  r.assignment = normalize_assignment(a);
  r.cost = cc_cost(f, r.assignment);
  r.solver = std::move(solver);
  if (!is_fair(f, r.assignment))
    fail(Errc::NoFairAssembly, "internal error: solver '" + r.solver + "' produced an unfair clustering");
  return r;
}

}  // namespace fcc
