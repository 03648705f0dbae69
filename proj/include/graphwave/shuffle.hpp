#pragma once

#include <vector>

#include "graphwave/edge_list.hpp"

namespace graphwave {

/// Vertex relabeling. forward[old_id] = new_id, inverse[new_id] = old_id.
struct Permutation {
  std::vector<u64> forward;
  std::vector<u64> inverse;

  u64 size() const { return forward.size(); }
};

/// Uniform random permutation of [0, n) by Fisher-Yates (descending index,
/// swap with a uniform draw from the unshuffled prefix), seeded.
Permutation random_permutation(u64 n, u64 seed);

/// Relabel every endpoint through perm.forward. Skewed generators pile work
/// onto low ids; shuffling spreads it across the block partitions.
EdgeList apply_permutation(const EdgeList& in, const Permutation& perm);

/// random_permutation + apply_permutation in one step.
EdgeList shuffle_vertices(const EdgeList& in, u64 seed, Permutation* perm_out = nullptr);

}  // namespace graphwave
