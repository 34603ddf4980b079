#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fcc/core.hpp"

namespace fcc {

/// Dense cost table over the contiguous index range [lo, lo + size - 1].
/// Missing entries hold INF.  Indices may be negative; storage is offset by
/// lo internally.
struct CostTable {
  static constexpr long long INF = std::numeric_limits<long long>::max() / 4;

  long long lo = 0;
  std::vector<long long> values;

  CostTable() = default;
  CostTable(long long lo_, long long hi_) : lo(lo_), values(static_cast<std::size_t>(hi_ - lo_ + 1), INF) {}

  long long hi() const { return lo + static_cast<long long>(values.size()) - 1; }
  bool contains(long long x) const { return x >= lo && x <= hi(); }
  long long get(long long x) const { return contains(x) ? values[static_cast<std::size_t>(x - lo)] : INF; }
  long long& at(long long x) { return values[static_cast<std::size_t>(x - lo)]; }

  void relax(long long x, long long v) {
    if (contains(x) && v < at(x)) at(x) = v;
  }
};

/// Merges cost tables left to right under an index-combination function.
///
/// combine(x1, x2, emit) receives one finite index from the accumulated
/// table and one from the next input table and emits every combined index;
/// the result value at an emitted index is the minimum over all ways of
/// picking one index per input table, of the sum of the picked entries,
/// restricted to [lo, hi].  Each merge round starts from a fresh all-INF
/// table so values never leak past a round uncombined.  A single input
/// table is returned as-is (clamped to the bounds).  Ties keep the first
/// assignment in scan order: tables left to right, indices ascending.
template <class Combine>
CostTable join(const std::vector<CostTable>& tables, Combine&& combine, long long lo, long long hi) {
  if (tables.empty()) fail(Errc::BadParams, "join needs at least one table");
  CostTable acc(lo, hi);
  for (long long x = tables[0].lo; x <= tables[0].hi(); ++x)
    acc.relax(x, tables[0].get(x));
  for (std::size_t i = 1; i < tables.size(); ++i) {
    CostTable next(lo, hi);
    const CostTable& t = tables[i];
    for (long long x1 = acc.lo; x1 <= acc.hi(); ++x1) {
      long long v1 = acc.get(x1);
      if (v1 >= CostTable::INF) continue;
      for (long long x2 = t.lo; x2 <= t.hi(); ++x2) {
        long long v2 = t.get(x2);
        if (v2 >= CostTable::INF) continue;
        combine(x1, x2, [&](long long x) { next.relax(x, v1 + v2); });
      }
    }
    acc = std::move(next);
  }
  return acc;
}

/// join plus enough bookkeeping to recover, for any finite result index,
/// which index was picked from every input table.
struct JoinTrace {
  CostTable result;
  std::vector<std::unordered_map<long long, std::pair<long long, long long>>> back;

  /// Per-input-table picked indices for result index x.
  std::vector<long long> reconstruct(long long x) const {
    std::vector<long long> picks(back.size() + 1);
    for (std::size_t r = back.size(); r > 0; --r) {
      auto it = back[r - 1].find(x);
      if (it == back[r - 1].end()) fail(Errc::LengthMismatch, "no trace for requested index");
      picks[r] = it->second.second;
      x = it->second.first;
    }
    picks[0] = x;
    return picks;
  }
};

template <class Combine>
JoinTrace join_traced(const std::vector<CostTable>& tables, Combine&& combine, long long lo, long long hi) {
  if (tables.empty()) fail(Errc::BadParams, "join needs at least one table");
  JoinTrace trace;
  trace.result = CostTable(lo, hi);
  for (long long x = tables[0].lo; x <= tables[0].hi(); ++x)
    trace.result.relax(x, tables[0].get(x));
  for (std::size_t i = 1; i < tables.size(); ++i) {
    CostTable next(lo, hi);
    std::unordered_map<long long, std::pair<long long, long long>> parents;
    const CostTable& t = tables[i];
    for (long long x1 = trace.result.lo; x1 <= trace.result.hi(); ++x1) {
      long long v1 = trace.result.get(x1);
      if (v1 >= CostTable::INF) continue;
      for (long long x2 = t.lo; x2 <= t.hi(); ++x2) {
        long long v2 = t.get(x2);
        if (v2 >= CostTable::INF) continue;
        combine(x1, x2, [&](long long x) {
          if (next.contains(x) && v1 + v2 < next.at(x)) {
            next.at(x) = v1 + v2;
            parents[x] = {x1, x2};
          }
        });
      }
    }
    trace.result = std::move(next);
    trace.back.push_back(std::move(parents));
  }
  return trace;
}

}  // namespace fcc
