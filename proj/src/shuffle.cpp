#include "graphwave/shuffle.hpp"

#include <numeric>

#include "graphwave/rng.hpp"

namespace graphwave {

Permutation random_permutation(u64 n, u64 seed) {
  Permutation perm;
  perm.forward.resize(n);
  std::iota(perm.forward.begin(), perm.forward.end(), u64{0});

  // Distinct stream index so shuffles never alias the generator's edge streams.
  SplitMix64 rng = stream_for(seed, 0x53484646ull);
  for (u64 i = n; i > 1; --i) {
    const u64 j = rng.next_below(i);
    std::swap(perm.forward[i - 1], perm.forward[j]);
  }

  perm.inverse.resize(n);
  for (u64 old_id = 0; old_id < n; ++old_id) {
    perm.inverse[perm.forward[old_id]] = old_id;
  }
  return perm;
}

EdgeList apply_permutation(const EdgeList& in, const Permutation& perm) {
  if (perm.size() != in.n) {
    throw ContractError("apply_permutation: permutation size does not match vertex count");
  }
  EdgeList out;
  out.n = in.n;
  out.directed = in.directed;
  out.original_directed_m = in.original_directed_m;
  out.edges.reserve(in.edges.size());
  for (const auto& [u, v] : in.edges) {
    out.edges.emplace_back(perm.forward[u], perm.forward[v]);
  }
  return out;
}

EdgeList shuffle_vertices(const EdgeList& in, u64 seed, Permutation* perm_out) {
  Permutation perm = random_permutation(in.n, seed);
  EdgeList out = apply_permutation(in, perm);
  if (perm_out != nullptr) {
    *perm_out = std::move(perm);
  }
  return out;
}

}  // namespace graphwave
