#pragma once

#include <vector>

#include "graphwave/block2d.hpp"

namespace graphwave {

/// Doubly-compressed sparse columns: only non-empty columns are represented,
/// so storage is O(nnz + nzc) regardless of the block's dimensions. With
/// p^2 blocks each holding ~m/p^2 entries over n/p-wide ranges, most columns
/// are empty and a CSC-style n/p+1 offset array would dwarf the data.
///
///   jc[k]          global-within-block id of the k-th non-empty column
///   cp[k], cp[k+1] bounds of that column's segment in ir
///   ir[...]        row ids, strictly increasing inside each segment
struct Dcsc {
  u64 nrows = 0;
  u64 ncols = 0;
  std::vector<u64> jc;
  std::vector<u64> cp;
  std::vector<u64> ir;

  u64 nnz() const { return ir.size(); }
  u64 nzc() const { return jc.size(); }
};

/// Compress a Block2D, preserving its entry set exactly.
Dcsc build_dcsc(const Block2D& block);

/// Split into `pieces` stripes of ⌈nrows/pieces⌉ consecutive rows each, so
/// independent workers can each own one stripe. Row and column ids stay in
/// block coordinates (stripe k holds the rows of chunk_range(nrows, pieces,
/// k)); the stripes' entry sets partition the input's, and spmsv outputs
/// concatenated in stripe order equal the unsplit result. Throws
/// ConfigError when pieces is 0 or exceeds the row dimension.
std::vector<Dcsc> split_rowwise(const Dcsc& d, u64 pieces);

}  // namespace graphwave
