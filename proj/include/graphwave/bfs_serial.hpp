#pragma once

#include "graphwave/bfs_output.hpp"
#include "graphwave/csr.hpp"
#include "graphwave/edge_list.hpp"

namespace graphwave {

/// Reference level-synchronous traversal: two swapped frontier stacks over
/// a CSR of the whole graph, no simulated communication. The other engines
/// must reproduce its distance array exactly.
BfsOutput bfs_serial(const EdgeList& g, u64 source);

/// Same, over an already-built single-rank CSR.
BfsOutput bfs_serial_csr(const CsrGraph& csr, u64 source);

}  // namespace graphwave
