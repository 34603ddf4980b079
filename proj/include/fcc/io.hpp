#pragma once

// Text formats for instances and results, plus the small parsing helpers the
// command-line tool shares with the tests.
//
// Instance format (line-oriented, diff-able):
//   line 1:  fcc v1 n=<n> k=<k>
//   line 2:  n space-separated vertex colors (ids 0..k-1)
//   rest:    one edge "u v" per line
// '#' starts a comment anywhere on a line; blank lines are ignored.
//
// Result format: one JSON document with a fixed field order (format, n, k,
// solver, chi, psi, total, [alpha,] fair, assignment, [wall_ms]), so output
// is byte-stable for a fixed input.  wall_ms is emitted only on request,
// keeping the default output deterministic.

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "relaxed.hpp"

namespace fcc {

/// Maps an error class to the process exit code: 2 for well-formed requests
/// the library honestly cannot serve (infeasible or out-of-scope instances),
/// 1 for everything else (malformed input, bad parameters, internal errors).
inline int exit_code_for(Errc c) {
  switch (c) {
    case Errc::UnsupportedInstance:
    case Errc::InfeasibleRatio:
    case Errc::WrongRatio:
    case Errc::DiameterTooLarge:
    case Errc::NotATree:
    case Errc::NoFairAssembly:
    case Errc::TooLargeClusterSize:
    case Errc::TooManyClusters:
    case Errc::TooLarge:
    case Errc::UndefinedBound:
    case Errc::NoExactSolverApplicable:
      return 2;
    default:
      return 1;
  }
}

namespace detail {

/// Parses one base-10 integer covering the whole token; reports
/// line and column (1-based) on failure.
inline long long parse_int_token(const std::string& tok, int line, int col) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                               ": expected an integer, got '" + tok + "'");
  return value;
}

/// Splits a line into whitespace-separated tokens with their 1-based columns.
inline std::vector<std::pair<std::string, int>> tokenize(const std::string& line) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented instance format into a validated forest.  Format
/// violations raise ParseError naming the offending line; semantic violations
/// (cycles, sparse color ids, out-of-range endpoints) propagate from
/// make_forest unchanged.
inline ColoredForest parse_instance(const std::string& text) {
  // Significant (line text, line number) pairs after comment stripping.
  std::vector<std::pair<std::string, int>> lines;
  {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      std::string line = text.substr(pos, end - pos);
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back({line, number});
      pos = end + 1;
      if (end == text.size()) break;
    }
  }
  if (lines.empty()) fail(Errc::ParseError, "empty instance: expected 'fcc v1 n=<n> k=<k>'");

  auto head = detail::tokenize(lines[0].first);
  int head_line = lines[0].second;
  auto head_error = [&]() {
    fail(Errc::ParseError, "line " + std::to_string(head_line) +
                               ": expected header 'fcc v1 n=<n> k=<k>', got '" + lines[0].first + "'");
  };
  if (head.size() != 4 || head[0].first != "fcc" || head[1].first != "v1" ||
      head[2].first.rfind("n=", 0) != 0 || head[3].first.rfind("k=", 0) != 0)
    head_error();
  long long n = detail::parse_int_token(head[2].first.substr(2), head_line, head[2].second + 2);
  long long k = detail::parse_int_token(head[3].first.substr(2), head_line, head[3].second + 2);
  if (n < 1) fail(Errc::ParseError, "line " + std::to_string(head_line) + ": n must be at least 1");

  if (lines.size() < 2)
    fail(Errc::ParseError, "missing color line: expected " + std::to_string(n) + " colors");
  auto color_tokens = detail::tokenize(lines[1].first);
  int color_line = lines[1].second;
  if (static_cast<long long>(color_tokens.size()) != n)
    fail(Errc::ParseError, "line " + std::to_string(color_line) + ": expected " + std::to_string(n) +
                               " colors, got " + std::to_string(color_tokens.size()));
  std::vector<int> color;
  color.reserve(color_tokens.size());
  for (auto& [tok, col] : color_tokens)
    color.push_back(static_cast<int>(detail::parse_int_token(tok, color_line, col)));

  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto toks = detail::tokenize(lines[i].first);
    if (toks.size() != 2)
      fail(Errc::ParseError, "line " + std::to_string(lines[i].second) +
                                 ": expected an edge 'u v', got " + std::to_string(toks.size()) +
                                 " tokens");
    int u = static_cast<int>(detail::parse_int_token(toks[0].first, lines[i].second, toks[0].second));
    int v = static_cast<int>(detail::parse_int_token(toks[1].first, lines[i].second, toks[1].second));
    edges.push_back({u, v});
  }

  ColoredForest f = make_forest(std::move(color), std::move(edges));
  if (f.k != k)
    fail(Errc::ParseError, "header declares k=" + std::to_string(k) + " but the colors span k=" +
                               std::to_string(f.k));
  return f;
}

/// Canonical instance text: header, one color line, edges in normalized
/// sorted order.  parse_instance(serialize_instance(f)) reproduces f exactly;
/// comments and formatting of a parsed file are not preserved.
inline std::string serialize_instance(const ColoredForest& f) {
  std::string out = "fcc v1 n=" + std::to_string(f.n) + " k=" + std::to_string(f.k) + "\n";
  for (int v = 0; v < f.n; ++v) {
    if (v) out += ' ';
    out += std::to_string(f.color[v]);
  }
  out += '\n';
  for (auto [u, v] : f.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "N", "N/D", or a plain decimal like "0.25" into an exact rational.
inline Rational parse_rational(const std::string& s) {
  auto bad = [&]() { fail(Errc::BadParams, "cannot parse '" + s + "' as a rational number"); };
  if (s.empty()) bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    long long num = 0, den = 0;
    auto [p1, e1] = std::from_chars(s.data(), s.data() + slash, num);
    auto [p2, e2] = std::from_chars(s.data() + slash + 1, s.data() + s.size(), den);
    if (e1 != std::errc() || p1 != s.data() + slash || e2 != std::errc() ||
        p2 != s.data() + s.size())
      bad();
    if (den == 0) fail(Errc::BadParams, "zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || frac_len > 9) bad();
    long long num = 0;
    auto [p, e] = std::from_chars(digits.data(), digits.data() + digits.size(), num);
    if (e != std::errc() || p != digits.data() + digits.size()) bad();
    long long den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num, den);
  }
  long long num = 0;
  auto [p, e] = std::from_chars(s.data(), s.data() + s.size(), num);
  if (e != std::errc() || p != s.data() + s.size()) bad();
  return Rational(num);
}

/// Metadata attached to a serialized result.  `alpha` marks a relaxed run:
/// the fairness verdict then reports relaxed fairness at that alpha.
/// `wall_ms` is only included when set, keeping default output byte-stable.
struct ResultMeta {
  std::string solver;
  std::optional<Rational> alpha;
  std::optional<double> wall_ms;
};

/// Serializes a clustering as the canonical result document, recomputing
/// cost and fairness from the instance rather than trusting the caller.
inline std::string serialize_result(const ColoredForest& f, const Assignment& a,
                                    const ResultMeta& meta) {
  Cost cost = cc_cost(f, a);
  nlohmann::ordered_json doc;
  doc["format"] = "fcc-result-v1";
  doc["n"] = f.n;
  doc["k"] = f.k;
  doc["solver"] = meta.solver;
  doc["chi"] = cost.chi;
  doc["psi"] = cost.psi;
  doc["total"] = cost.total;
  if (meta.alpha) {
    doc["alpha"] = rational_str(*meta.alpha);
    doc["fair"] = is_alpha_fair(f, a, *meta.alpha);
  } else {
    doc["fair"] = is_fair(f, a);
  }
  doc["assignment"] = a;
  if (meta.wall_ms) doc["wall_ms"] = *meta.wall_ms;
  return doc.dump(2) + "\n";
}

/// A result document read back for verification.
struct ParsedResult {
  Assignment assignment;
  std::optional<long long> chi, psi, total;
  std::optional<std::string> solver;
  std::optional<Rational> alpha;
};

inline ParsedResult parse_result(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("result document: ") + e.what());
  }
  ParsedResult r;
  try {
    if (!doc.contains("assignment"))
      fail(Errc::ParseError, "result document: missing 'assignment'");
    r.assignment = doc["assignment"].get<Assignment>();
    if (doc.contains("chi")) r.chi = doc["chi"].get<long long>();
    if (doc.contains("psi")) r.psi = doc["psi"].get<long long>();
    if (doc.contains("total")) r.total = doc["total"].get<long long>();
    if (doc.contains("solver")) r.solver = doc["solver"].get<std::string>();
    if (doc.contains("alpha")) r.alpha = parse_rational(doc["alpha"].get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("result document: ") + e.what());
  }
  return r;
}

/// Outcome of checking a result document against its instance.
struct VerifyReport {
  bool verified = false;       // no problems found
  bool fair = false;           // fairness verdict that was actually checked
  bool cost_computed = false;  // false when the assignment was unusable
  Cost cost;                   // recomputed from the assignment
  std::vector<std::string> problems;
};

/// Re-derives cost and fairness from the instance and compares them with the
/// document's claims.  `alpha_override` forces a relaxed-fairness check; a
/// document carrying its own alpha is otherwise checked at that alpha.
inline VerifyReport verify_result(const ColoredForest& f, const ParsedResult& r,
                                  std::optional<Rational> alpha_override = std::nullopt) {
  VerifyReport report;
  if (static_cast<int>(r.assignment.size()) != f.n) {
    report.problems.push_back("assignment covers " + std::to_string(r.assignment.size()) +
                              " vertices, instance has " + std::to_string(f.n));
    return report;
  }
  for (int c : r.assignment)
    if (c < 0) {
      report.problems.push_back("assignment contains a negative cluster label");
      return report;
    }

  report.cost = cc_cost(f, r.assignment);
  report.cost_computed = true;
  std::optional<Rational> alpha = alpha_override ? alpha_override : r.alpha;
  report.fair = alpha ? is_alpha_fair(f, r.assignment, *alpha) : is_fair(f, r.assignment);
  if (!report.fair)
    report.problems.push_back(alpha ? "clustering is not relaxed-fair at alpha = " +
                                          rational_str(*alpha)
                                    : "clustering is not fair");
  auto check_field = [&](const char* name, std::optional<long long> claimed, long long actual) {
    if (claimed && *claimed != actual)
      report.problems.push_back(std::string(name) + " claims " + std::to_string(*claimed) +
                                ", recomputation gives " + std::to_string(actual));
  };
  check_field("chi", r.chi, report.cost.chi);
  check_field("psi", r.psi, report.cost.psi);
  check_field("total", r.total, report.cost.total);
  report.verified = report.problems.empty();
  return report;
}

}  // namespace fcc
