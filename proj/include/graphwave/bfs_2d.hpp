#pragma once

#include "graphwave/bfs_output.hpp"
#include "graphwave/edge_list.hpp"
#include "graphwave/simulator.hpp"
#include "graphwave/spmsv.hpp"
#include "graphwave/vector_layout.hpp"

namespace graphwave {

/// Checkerboard traversal: the adjacency matrix lives in p_r x p_c blocks
/// and each level runs transpose -> column allgather -> blockwise
/// sparse-matrix / sparse-vector product -> row fold -> merge. Frontier
/// words carry the vertex's own id, so expansion traffic is index-only and
/// fold words pack (target, parent) pairs exactly like the 1D engine.
/// Requires a symmetrized (undirected) edge list.
struct Bfs2dConfig {
  ProcGrid grid{1, 1};
  /// Park whole vector blocks on the diagonal ranks instead of spreading
  /// sub-chunks across each processor row (square grids only).
  bool diagonal = false;
  SpmsvMode backend = SpmsvMode::Auto;
  u64 auto_rank_threshold = 10000;
  TransposeMode transpose = TransposeMode::Auto;
  ExecMode mode = ExecMode::Concurrent;
};

BfsRun bfs_2d(const EdgeList& g, u64 source, const Bfs2dConfig& cfg);

/// Spread of merge work across ranks for one run.
struct MergeImbalance {
  u64 total = 0;
  u64 on_diagonal = 0;
  double max_over_mean = 0.0;
};

MergeImbalance merge_imbalance(const ProcGrid& grid, const std::vector<u64>& merge_ops);

}  // namespace graphwave
