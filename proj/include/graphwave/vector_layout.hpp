#pragma once

#include <vector>

#include "graphwave/common.hpp"
#include "graphwave/proc_grid.hpp"
#include "graphwave/simulator.hpp"

namespace graphwave {

/// Sub-chunk `inner_idx` (of `inner_parts`) within block `outer_idx` (of
/// `outer_parts`) of [0, n), both levels using ceiling-sized chunks.
inline Range two_level_range(u64 n, u64 outer_parts, u64 outer_idx, u64 inner_parts,
                             u64 inner_idx) {
  const Range block = chunk_range(n, outer_parts, outer_idx);
  const Range sub = chunk_range(block.size(), inner_parts, inner_idx);
  return Range{block.begin + sub.begin, block.begin + sub.end};
}

/// How a length-n vertex vector is spread over the process grid. Two
/// distributions are in play at once during 2D traversal:
///
///   rowwise  rank (i,j) owns sub-chunk j of row block i; row block i is
///            the same vertex range as the matrix row blocks of processor
///            row i, so fold results for row block i stay inside that row.
///   colwise  rank (i,j) owns sub-chunk i of column block j, the staging
///            layout for the column allgather that assembles the full
///            column block j on every rank of processor column j.
///
/// With `diagonal` set (square grids), rank (i,i) owns all of block i in
/// both distributions and off-diagonal ranks own nothing. The transpose
/// degenerates to a self-exchange.
struct VectorDist {
  u64 n = 0;
  ProcGrid grid;
  bool diagonal = false;

  VectorDist() = default;
  VectorDist(u64 length, const ProcGrid& g, bool diag = false) : n(length), grid(g), diagonal(diag) {
    if (diagonal && !grid.square()) {
      throw ConfigError("VectorDist: diagonal distribution requires a square grid");
    }
  }

  Range rowwise_piece(u64 rank) const;
  Range colwise_piece(u64 rank) const;
  u64 rowwise_owner(u64 v) const;
  u64 colwise_owner(u64 v) const;
};

enum class TransposeMode {
  Pairwise,  // swap pieces with the mirrored rank; square grids only
  General,   // route each index to its colwise owner via an all-ranks exchange
  Auto,      // Pairwise when square, General otherwise
};

/// Redistribute a sorted index list from the rowwise to the colwise
/// distribution. `rowwise_local` holds this rank's rowwise piece contents;
/// the return value is this rank's colwise piece contents, sorted.
std::vector<u64> transpose_vector(RankCtx& ctx, const VectorDist& dist,
                                  std::vector<u64> rowwise_local, TransposeMode mode,
                                  const char* site);

}  // namespace graphwave
