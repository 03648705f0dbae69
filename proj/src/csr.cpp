#include "graphwave/csr.hpp"

#include <algorithm>

namespace graphwave {

CsrGraph build_csr_1d(const EdgeList& g, u64 p, u64 rank) {
  if (p == 0 || p > std::max<u64>(g.n, 1)) {
    throw ConfigError("build_csr_1d: cannot split " + std::to_string(g.n) + " vertices over " +
                      std::to_string(p) + " ranks");
  }
  if (rank >= p) {
    throw ContractError("build_csr_1d: rank " + std::to_string(rank) + " outside grid of " +
                        std::to_string(p));
  }
  const Range owned = chunk_range(g.n, p, rank);

  std::vector<Edge> mine;
  for (const auto& [u, v] : g.edges) {
    if (u >= g.n || v >= g.n) {
      throw ContractError("build_csr_1d: edge endpoint outside [0, n)");
    }
    if (owned.contains(u) && u != v) {
      mine.emplace_back(u, v);
    }
  }
  std::sort(mine.begin(), mine.end());
  mine.erase(std::unique(mine.begin(), mine.end()), mine.end());

  CsrGraph csr;
  csr.n_global = g.n;
  csr.n_local = owned.size();
  csr.global_offset = owned.begin;
  csr.offsets.assign(csr.n_local + 1, 0);
  for (const auto& [u, v] : mine) {
    csr.offsets[u - owned.begin + 1]++;
  }
  for (u64 i = 1; i <= csr.n_local; ++i) {
    csr.offsets[i] += csr.offsets[i - 1];
  }
  csr.adjacency.reserve(mine.size());
  for (const auto& [u, v] : mine) {
    csr.adjacency.push_back(v);  // already sorted per source by the pair sort
  }
  return csr;
}

}  // namespace graphwave
