#pragma once

#include <vector>

#include <json.hpp>

#include "graphwave/comm_stats.hpp"
#include "graphwave/common.hpp"
#include "graphwave/edge_list.hpp"

namespace graphwave {

/// Result of one traversal. Unreached vertices carry kInfDistance /
/// kNoParent; the source is its own parent. `levels` counts the non-empty
/// frontiers processed, so a lone source still makes one level and the
/// deepest reached vertex sits at distance levels-1.
struct BfsOutput {
  u64 n = 0;
  u64 source = 0;
  std::vector<u64> distances;
  std::vector<u64> parents;
  u64 levels = 0;
  u64 reached = 0;
  /// Input (directed, deduplicated) edges with both endpoints reached;
  /// filled by the benchmark pipeline, not by the engines.
  u64 edges_traversed = 0;

  nlohmann::ordered_json to_json(bool include_vectors) const;
};

/// A traversal plus the exact communication accounting of the simulated
/// run. merge_ops[r] counts the frontier-candidate words rank r processed
/// at its merge step (empty for the serial engine).
struct BfsRun {
  BfsOutput output;
  CommStats stats;
  std::vector<u64> merge_ops;
};

u64 count_reached(const std::vector<u64>& distances);

/// Recompute every vertex's depth by chasing parent pointers from scratch.
/// Throws IntegrityError on cycles, out-of-range pointers, a parent that is
/// itself unreached, or a source that is not its own parent. Used to
/// cross-check engine outputs: for a correct run the result equals the
/// engine's distance array.
std::vector<u64> distances_from_parents(const std::vector<u64>& parents, u64 source);

/// Edges of `edges` (usually the deduplicated directed input list) whose
/// endpoints both ended up reached: the traversed-edge count used for
/// throughput reporting.
u64 count_traversed_edges(const EdgeList& edges, const std::vector<u64>& distances);

}  // namespace graphwave
