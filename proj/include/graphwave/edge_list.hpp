#pragma once

#include <utility>
#include <vector>

#include "graphwave/common.hpp"

namespace graphwave {

using Edge = std::pair<u64, u64>;

/// Flat list of (u, v) pairs over vertex set [0, n). Duplicate edges and
/// self-loops are legal here; traversal structures drop them at build time.
struct EdgeList {
  u64 n = 0;
  std::vector<Edge> edges;
  bool directed = true;
  /// Set by symmetrize(): number of distinct directed edges in its input.
  /// Benchmarks normalize TEPS by traversed edges of the original graph,
  /// so the pre-symmetrization count has to survive the transformation.
  u64 original_directed_m = 0;
};

/// Distinct directed pairs of `edges`, sorted ascending.
std::vector<Edge> dedup_edges(const std::vector<Edge>& edges);

/// Union of the input relation with its reverse, pair-level deduplicated.
/// The result keeps n, sets directed = false, and records the number of
/// distinct directed input edges in original_directed_m.
EdgeList symmetrize(const EdgeList& in);

}  // namespace graphwave
