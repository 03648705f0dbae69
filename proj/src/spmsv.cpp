#include "graphwave/spmsv.hpp"

#include <algorithm>
#include <queue>

namespace graphwave {
namespace {

/// Positions in jc of the f indices that name non-empty columns. Both
/// sequences are sorted; each f index is located by binary search.
std::vector<std::pair<u64, u64>> matched_columns(const Dcsc& a, const SparseVector& f) {
  std::vector<std::pair<u64, u64>> hits;  // (jc position, f position)
  auto from = a.jc.begin();
  for (std::size_t fi = 0; fi < f.indices.size(); ++fi) {
    const auto it = std::lower_bound(from, a.jc.end(), f.indices[fi]);
    if (it != a.jc.end() && *it == f.indices[fi]) {
      hits.emplace_back(static_cast<u64>(it - a.jc.begin()), fi);
    }
    from = it;
  }
  return hits;
}

SparseVector spmsv_spa(const Dcsc& a, const SparseVector& f, Spa* scratch) {
  Spa local;
  Spa& spa = scratch != nullptr ? *scratch : local;
  spa.resize(a.nrows);

  for (const auto& [jpos, fpos] : matched_columns(a, f)) {
    const u64 value = f.values[fpos];
    for (u64 idx = a.cp[jpos]; idx < a.cp[jpos + 1]; ++idx) {
      spa.accumulate(a.ir[idx], value);
    }
  }

  // The accumulator hands back touch order; emit in row order.
  std::vector<u64> rows(spa.touched());
  std::sort(rows.begin(), rows.end());
  SparseVector out;
  out.indices.reserve(rows.size());
  for (const u64 r : rows) {
    out.push(r, spa.value_at(r));
  }
  spa.reset();
  return out;
}

SparseVector spmsv_heap(const Dcsc& a, const SparseVector& f) {
  // Cursor per selected column segment; a min-heap on row id yields the
  // merged output directly, combining equal rows with max.
  struct Cursor {
    u64 pos;  // index into ir
    u64 end;
    u64 value;
  };
  const auto hits = matched_columns(a, f);
  auto row_greater = [&](const Cursor& x, const Cursor& y) { return a.ir[x.pos] > a.ir[y.pos]; };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(row_greater)> heap(row_greater);
  for (const auto& [jpos, fpos] : hits) {
    if (a.cp[jpos] < a.cp[jpos + 1]) {
      heap.push(Cursor{a.cp[jpos], a.cp[jpos + 1], f.values[fpos]});
    }
  }

  SparseVector out;
  while (!heap.empty()) {
    Cursor cur = heap.top();
    heap.pop();
    const u64 row = a.ir[cur.pos];
    if (!out.indices.empty() && out.indices.back() == row) {
      out.values.back() = std::max(out.values.back(), cur.value);
    } else {
      out.push(row, cur.value);
    }
    if (++cur.pos < cur.end) {
      heap.push(cur);
    }
  }
  return out;
}

}  // namespace

SparseVector spmsv(const Dcsc& a, const SparseVector& f, const SpmsvBackend& backend,
                   Spa* scratch) {
  f.check_valid(a.ncols, "spmsv frontier");
  return backend.resolve() == SpmsvMode::Spa ? spmsv_spa(a, f, scratch) : spmsv_heap(a, f);
}

u64 spmsv_flop_count(const Dcsc& a, const SparseVector& f) {
  f.check_valid(a.ncols, "spmsv frontier");
  u64 flops = 0;
  for (const auto& [jpos, fpos] : matched_columns(a, f)) {
    flops += a.cp[jpos + 1] - a.cp[jpos];
  }
  return flops;
}

}  // namespace graphwave
