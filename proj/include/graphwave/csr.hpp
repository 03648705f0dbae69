#pragma once

#include <vector>

#include "graphwave/edge_list.hpp"

namespace graphwave {

/// Adjacency of one rank's contiguous vertex block in compressed sparse row
/// form. offsets has n_local + 1 entries; adjacency runs are sorted and
/// duplicate-free, targets are global vertex ids.
struct CsrGraph {
  u64 n_global = 0;
  u64 n_local = 0;
  u64 global_offset = 0;  // first owned vertex id
  std::vector<u64> offsets;
  std::vector<u64> adjacency;

  bool owns(u64 v) const { return v >= global_offset && v < global_offset + n_local; }

  /// Adjacency run of owned vertex v (global id).
  std::pair<const u64*, const u64*> neighbors(u64 v) const {
    const u64 local = v - global_offset;
    return {adjacency.data() + offsets[local], adjacency.data() + offsets[local + 1]};
  }

  u64 degree(u64 v) const {
    const u64 local = v - global_offset;
    return offsets[local + 1] - offsets[local];
  }
};

/// Block owner of vertex v when [0, n) is split into p blocks of ⌈n/p⌉.
inline u64 find_owner(u64 v, u64 n, u64 p) {
  if (v >= n) {
    throw ContractError("find_owner: vertex " + std::to_string(v) + " outside [0, " +
                        std::to_string(n) + ")");
  }
  return chunk_owner(n, p, v);
}

/// CSR for `rank`'s block of a p-way 1D partition. Keeps edges whose source
/// is owned; duplicate edges and self-loops are dropped here. Requires the
/// input to be symmetrized if each undirected edge should appear on both
/// endpoint owners. Throws ConfigError when p == 0 or p > n.
CsrGraph build_csr_1d(const EdgeList& g, u64 p, u64 rank);

}  // namespace graphwave
