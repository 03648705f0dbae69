#include "graphwave/vector_layout.hpp"

#include <utility>

namespace graphwave {

Range VectorDist::rowwise_piece(u64 rank) const {
  const u64 i = grid.row_of(rank);
  const u64 j = grid.col_of(rank);
  if (diagonal) {
    if (i != j) {
      return Range{0, 0};
    }
    return chunk_range(n, grid.p_r, i);
  }
  return two_level_range(n, grid.p_r, i, grid.p_c, j);
}

Range VectorDist::colwise_piece(u64 rank) const {
  const u64 i = grid.row_of(rank);
  const u64 j = grid.col_of(rank);
  if (diagonal) {
    if (i != j) {
      return Range{0, 0};
    }
    return chunk_range(n, grid.p_c, j);
  }
  return two_level_range(n, grid.p_c, j, grid.p_r, i);
}

u64 VectorDist::rowwise_owner(u64 v) const {
  if (v >= n) {
    throw ContractError("rowwise_owner: vertex " + std::to_string(v) + " is outside [0, " +
                        std::to_string(n) + ")");
  }
  const u64 i = chunk_owner(n, grid.p_r, v);
  if (diagonal) {
    return grid.rank_of(i, i);
  }
  const Range block = chunk_range(n, grid.p_r, i);
  const u64 j = chunk_owner(block.size(), grid.p_c, v - block.begin);
  return grid.rank_of(i, j);
}

u64 VectorDist::colwise_owner(u64 v) const {
  if (v >= n) {
    throw ContractError("colwise_owner: vertex " + std::to_string(v) + " is outside [0, " +
                        std::to_string(n) + ")");
  }
  const u64 j = chunk_owner(n, grid.p_c, v);
  if (diagonal) {
    return grid.rank_of(j, j);
  }
  const Range block = chunk_range(n, grid.p_c, j);
  const u64 i = chunk_owner(block.size(), grid.p_r, v - block.begin);
  return grid.rank_of(i, j);
}

std::vector<u64> transpose_vector(RankCtx& ctx, const VectorDist& dist,
                                  std::vector<u64> rowwise_local, TransposeMode mode,
                                  const char* site) {
  if (mode == TransposeMode::Auto) {
    mode = dist.grid.square() ? TransposeMode::Pairwise : TransposeMode::General;
  }
  if (mode == TransposeMode::Pairwise) {
    // Both distributions chunk with the same ceiling rule, so on a square
    // grid the rowwise piece of (i,j) is exactly the colwise piece of
    // (j,i): one swap moves everything where it belongs.
    const u64 partner = dist.grid.transpose_partner(ctx.rank());
    return ctx.pairwise_exchange(partner, std::move(rowwise_local), site);
  }

  const std::vector<u64> group = dist.grid.all_group();
  std::vector<std::vector<u64>> send(group.size());
  for (u64 v : rowwise_local) {
    send[dist.colwise_owner(v)].push_back(v);
  }
  std::vector<std::vector<u64>> recv = ctx.transpose_exchange(group, std::move(send), site);

  // Rank order equals rowwise interval order, so the per-source buffers
  // concatenate into a sorted list.
  std::vector<u64> result;
  for (std::vector<u64>& part : recv) {
    result.insert(result.end(), part.begin(), part.end());
  }
  return result;
}

}  // namespace graphwave
