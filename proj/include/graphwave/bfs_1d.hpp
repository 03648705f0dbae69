#pragma once

#include "graphwave/bfs_output.hpp"
#include "graphwave/edge_list.hpp"
#include "graphwave/simulator.hpp"

namespace graphwave {

/// Row-partitioned traversal over `ranks` simulated processes. Each level,
/// every rank walks the adjacency of its owned frontier vertices, packs one
/// (target, parent) word per outgoing edge, and routes the words to the
/// target owners in a single personalized exchange; a boolean allreduce
/// decides termination. `threads` splits the frontier walk into that many
/// sub-units whose buckets are concatenated in a fixed order, so results
/// and traffic are identical for every thread count.
struct Bfs1dConfig {
  u64 ranks = 1;
  u64 threads = 1;
  ExecMode mode = ExecMode::Concurrent;
};

BfsRun bfs_1d(const EdgeList& g, u64 source, const Bfs1dConfig& cfg);

}  // namespace graphwave
