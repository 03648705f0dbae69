#include "graphwave/bfs_serial.hpp"

#include <utility>
#include <vector>

namespace graphwave {

BfsOutput bfs_serial(const EdgeList& g, u64 source) {
  return bfs_serial_csr(build_csr_1d(g, 1, 0), source);
}

BfsOutput bfs_serial_csr(const CsrGraph& csr, u64 source) {
  const u64 n = csr.n_global;
  if (source >= n) {
    throw ContractError("bfs_serial: source " + std::to_string(source) + " is outside [0, " +
                        std::to_string(n) + ")");
  }
  if (csr.n_local != n) {
    throw ContractError("bfs_serial: needs a CSR of the whole graph");
  }

  BfsOutput out;
  out.n = n;
  out.source = source;
  out.distances.assign(n, kInfDistance);
  out.parents.assign(n, kNoParent);
  out.distances[source] = 0;
  out.parents[source] = source;

  std::vector<u64> frontier{source};
  std::vector<u64> next;
  u64 level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (u64 u : frontier) {
      auto [first, last] = csr.neighbors(u);
      for (const u64* it = first; it != last; ++it) {
        const u64 v = *it;
        if (out.distances[v] == kInfDistance) {
          out.distances[v] = level;
          out.parents[v] = u;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }

  out.levels = level;
  out.reached = count_reached(out.distances);
  return out;
}

}  // namespace graphwave
