#include "graphwave/bfs_2d.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "graphwave/block2d.hpp"
#include "graphwave/dcsc.hpp"

namespace graphwave {

namespace {

struct RankResult {
  std::vector<u64> distances;  // rowwise piece only
  std::vector<u64> parents;
  u64 piece_begin = 0;
  u64 levels = 0;
  u64 merges = 0;
};

}  // namespace

BfsRun bfs_2d(const EdgeList& g, u64 source, const Bfs2dConfig& cfg) {
  const u64 n = g.n;
  if (source >= n) {
    throw ContractError("bfs_2d: source " + std::to_string(source) + " is outside [0, " +
                        std::to_string(n) + ")");
  }
  if (g.directed) {
    throw ConfigError("bfs_2d: needs a symmetrized edge list (block products walk both "
                      "directions of every edge)");
  }
  if (n > kPackLimit) {
    throw ConfigError("bfs_2d: vertex ids must fit in 32 bits to pack (target, parent) words");
  }
  const ProcGrid& grid = cfg.grid;
  const VectorDist dist(n, grid, cfg.diagonal);
  const std::vector<Block2D> blocks = partition_2d(g, grid.p_r, grid.p_c);

  SpmsvBackend backend;
  backend.mode = cfg.backend;
  backend.auto_rank_threshold = cfg.auto_rank_threshold;
  backend.simulated_ranks = grid.size();

  auto program = [&](RankCtx& ctx) -> RankResult {
    const u64 rank = ctx.rank();
    const u64 i = grid.row_of(rank);
    const u64 j = grid.col_of(rank);
    const Block2D& block = blocks[rank];
    const Dcsc matrix = build_dcsc(block);

    const Range mine = dist.rowwise_piece(rank);
    const std::vector<u64> row_ranks = grid.row_group(i);
    const std::vector<u64> col_ranks = grid.col_group(j);
    const std::vector<u64> everyone = grid.all_group();

    RankResult res;
    res.piece_begin = mine.begin;
    res.distances.assign(mine.size(), kInfDistance);
    res.parents.assign(mine.size(), kNoParent);

    std::vector<u64> frontier;  // my rowwise piece of the current frontier
    if (mine.contains(source)) {
      res.distances[source - mine.begin] = 0;
      res.parents[source - mine.begin] = source;
      frontier.push_back(source);
    }

    Spa scratch;
    u64 level = 0;
    for (;;) {
      ctx.set_level(level);

      // Stage the frontier for the column allgather, then assemble the
      // full column-block slice of it on every rank of this column.
      std::vector<u64> staged =
          transpose_vector(ctx, dist, std::move(frontier), cfg.transpose, "bfs_2d/transpose");
      std::vector<u64> gathered = ctx.allgatherv(col_ranks, std::move(staged), "bfs_2d/expand");

      // Candidates from my block: value = the frontier vertex itself, so
      // the product's output values are candidate parents.
      SparseVector f;
      f.indices.reserve(gathered.size());
      f.values.reserve(gathered.size());
      for (u64 v : gathered) {
        f.indices.push_back(v - block.cols.begin);
        f.values.push_back(v);
      }
      const SparseVector y = spmsv(matrix, f, backend, &scratch);

      // Fold: each candidate goes to the rank of my processor row that
      // owns the target vertex in the rowwise distribution.
      std::vector<std::vector<u64>> send(row_ranks.size());
      for (u64 k = 0; k < y.nnz(); ++k) {
        const u64 target = block.rows.begin + y.indices[k];
        const u64 owner = dist.rowwise_owner(target);
        send[grid.col_of(owner)].push_back(pack_pair(target, y.values[k]));
      }
      std::vector<std::vector<u64>> recv = ctx.alltoallv(row_ranks, std::move(send), "bfs_2d/fold");

      frontier.clear();
      for (const std::vector<u64>& part : recv) {
        for (u64 word : part) {
          const u64 v = unpack_hi(word);
          const u64 parent = unpack_lo(word);
          res.merges += 1;
          const u64 local = v - mine.begin;
          if (res.distances[local] == kInfDistance) {
            res.distances[local] = level + 1;
            res.parents[local] = parent;
            frontier.push_back(v);
          }
        }
      }
      std::sort(frontier.begin(), frontier.end());

      const u64 any = ctx.allreduce(everyone, frontier.empty() ? 0 : 1, ReduceOp::Or,
                                    "bfs_2d/termination");
      ++level;
      if (any == 0) {
        break;
      }
    }
    res.levels = level;
    return res;
  };

  auto [per_rank, stats] = run_ranks(grid, cfg.mode, program);

  BfsRun run;
  run.stats = std::move(stats);
  run.output.n = n;
  run.output.source = source;
  run.output.levels = per_rank.empty() ? 0 : per_rank[0].levels;
  run.output.distances.assign(n, kInfDistance);
  run.output.parents.assign(n, kNoParent);
  run.merge_ops.resize(grid.size());
  for (u64 r = 0; r < grid.size(); ++r) {
    RankResult& piece = per_rank[r];
    for (u64 k = 0; k < piece.distances.size(); ++k) {
      run.output.distances[piece.piece_begin + k] = piece.distances[k];
      run.output.parents[piece.piece_begin + k] = piece.parents[k];
    }
    run.merge_ops[r] = piece.merges;
  }
  run.output.reached = count_reached(run.output.distances);
  return run;
}

MergeImbalance merge_imbalance(const ProcGrid& grid, const std::vector<u64>& merge_ops) {
  MergeImbalance result;
  if (merge_ops.size() != grid.size()) {
    throw ContractError("merge_imbalance: counter list does not match the grid size");
  }
  u64 max_load = 0;
  for (u64 r = 0; r < merge_ops.size(); ++r) {
    result.total += merge_ops[r];
    max_load = std::max(max_load, merge_ops[r]);
    if (grid.row_of(r) == grid.col_of(r)) {
      result.on_diagonal += merge_ops[r];
    }
  }
  if (result.total > 0) {
    const double mean = static_cast<double>(result.total) / static_cast<double>(grid.size());
    result.max_over_mean = static_cast<double>(max_load) / mean;
  }
  return result;
}

}  // namespace graphwave
