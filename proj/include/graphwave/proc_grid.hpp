#pragma once

#include <vector>

#include "graphwave/common.hpp"

namespace graphwave {

/// Logical p_r x p_c process mesh with row-major rank numbering:
/// rank(i, j) = i * p_c + j. A 1D engine uses a p x 1 grid.
struct ProcGrid {
  u64 p_r = 1;
  u64 p_c = 1;

  ProcGrid() = default;
  ProcGrid(u64 rows, u64 cols) : p_r(rows), p_c(cols) {
    if (rows == 0 || cols == 0) {
      throw ConfigError("ProcGrid: grid dimensions must be positive");
    }
  }

  u64 size() const { return p_r * p_c; }
  bool square() const { return p_r == p_c; }

  u64 rank_of(u64 i, u64 j) const { return i * p_c + j; }
  u64 row_of(u64 rank) const { return rank / p_c; }
  u64 col_of(u64 rank) const { return rank % p_c; }

  /// Ranks of processor row i, ascending.
  std::vector<u64> row_group(u64 i) const;
  /// Ranks of processor column j, ascending.
  std::vector<u64> col_group(u64 j) const;
  /// All ranks, ascending.
  std::vector<u64> all_group() const;

  /// Transpose partner: rank of (j, i) for rank (i, j). Square grids only.
  u64 transpose_partner(u64 rank) const {
    if (!square()) {
      throw ConfigError("transpose_partner: grid is not square");
    }
    return rank_of(col_of(rank), row_of(rank));
  }

  bool operator==(const ProcGrid& other) const = default;
};

}  // namespace graphwave
