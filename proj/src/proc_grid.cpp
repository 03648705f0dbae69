#include "graphwave/proc_grid.hpp"

#include <numeric>

namespace graphwave {

std::vector<u64> ProcGrid::row_group(u64 i) const {
  std::vector<u64> ranks(p_c);
  for (u64 j = 0; j < p_c; ++j) {
    ranks[j] = rank_of(i, j);
  }
  return ranks;
}

std::vector<u64> ProcGrid::col_group(u64 j) const {
  std::vector<u64> ranks(p_r);
  for (u64 i = 0; i < p_r; ++i) {
    ranks[i] = rank_of(i, j);
  }
  return ranks;
}

std::vector<u64> ProcGrid::all_group() const {
  std::vector<u64> ranks(size());
  std::iota(ranks.begin(), ranks.end(), u64{0});
  return ranks;
}

}  // namespace graphwave
