#include "graphwave/block2d.hpp"

#include <algorithm>

namespace graphwave {

std::vector<Block2D> partition_2d(const EdgeList& g, u64 p_r, u64 p_c) {
  if (p_r == 0 || p_c == 0) {
    throw ConfigError("partition_2d: grid dimensions must be positive");
  }

  std::vector<Block2D> blocks(p_r * p_c);
  for (u64 i = 0; i < p_r; ++i) {
    for (u64 j = 0; j < p_c; ++j) {
      Block2D& b = blocks[i * p_c + j];
      b.block_row = i;
      b.block_col = j;
      b.rows = chunk_range(g.n, p_r, i);
      b.cols = chunk_range(g.n, p_c, j);
    }
  }

  for (const auto& [u, v] : g.edges) {
    if (u >= g.n || v >= g.n) {
      throw ContractError("partition_2d: edge endpoint outside [0, n)");
    }
    if (u == v) {
      continue;
    }
    const u64 i = chunk_owner(g.n, p_r, u);
    const u64 j = chunk_owner(g.n, p_c, v);
    Block2D& b = blocks[i * p_c + j];
    b.entries.emplace_back(u - b.rows.begin, v - b.cols.begin);
  }

  for (Block2D& b : blocks) {
    std::sort(b.entries.begin(), b.entries.end(),
              [](const auto& x, const auto& y) {
                return x.second != y.second ? x.second < y.second : x.first < y.first;
              });
    b.entries.erase(std::unique(b.entries.begin(), b.entries.end()), b.entries.end());
  }
  return blocks;
}

}  // namespace graphwave
