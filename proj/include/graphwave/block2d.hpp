#pragma once

#include <vector>

#include "graphwave/edge_list.hpp"

namespace graphwave {

/// One block of a p_r x p_c checkerboard split of the n x n adjacency
/// matrix. Entries are block-local (row, col) pairs, sorted by (col, row)
/// and duplicate-free; self-loops of the graph are dropped at this stage.
struct Block2D {
  u64 block_row = 0;
  u64 block_col = 0;
  Range rows;  // global row range
  Range cols;  // global column range
  std::vector<std::pair<u64, u64>> entries;  // (local row, local col), sorted by (col, row)

  u64 nnz() const { return entries.size(); }
};

/// Split a (symmetrized, shuffled) graph into p_r x p_c blocks: edge (u, v)
/// becomes matrix entry (row u, col v) in block (⌊u/⌈n/p_r⌉⌋, ⌊v/⌈n/p_c⌉⌋).
/// Result is row-major: blocks[i * p_c + j]. Grids with more cells than
/// vertices are fine; trailing blocks just come out empty.
std::vector<Block2D> partition_2d(const EdgeList& g, u64 p_r, u64 p_c);

}  // namespace graphwave
