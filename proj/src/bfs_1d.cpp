#include "graphwave/bfs_1d.hpp"

#include <utility>
#include <vector>

#include "graphwave/csr.hpp"

namespace graphwave {

namespace {

struct RankResult {
  std::vector<u64> distances;  // owned block only
  std::vector<u64> parents;
  u64 first_owned = 0;
  u64 levels = 0;
  u64 merges = 0;
};

}  // namespace

BfsRun bfs_1d(const EdgeList& g, u64 source, const Bfs1dConfig& cfg) {
  const u64 n = g.n;
  if (source >= n) {
    throw ContractError("bfs_1d: source " + std::to_string(source) + " is outside [0, " +
                        std::to_string(n) + ")");
  }
  if (n > kPackLimit) {
    throw ConfigError("bfs_1d: vertex ids must fit in 32 bits to pack (target, parent) words");
  }
  if (cfg.ranks == 0 || cfg.threads == 0) {
    throw ConfigError("bfs_1d: ranks and threads must be positive");
  }
  const u64 p = cfg.ranks;
  ProcGrid grid(p, 1);

  auto program = [&](RankCtx& ctx) -> RankResult {
    const u64 r = ctx.rank();
    const CsrGraph csr = build_csr_1d(g, p, r);
    const Range owned{csr.global_offset, csr.global_offset + csr.n_local};
    const std::vector<u64> everyone = grid.all_group();

    RankResult res;
    res.first_owned = owned.begin;
    res.distances.assign(owned.size(), kInfDistance);
    res.parents.assign(owned.size(), kNoParent);

    std::vector<u64> frontier;
    if (owned.contains(source)) {
      res.distances[source - owned.begin] = 0;
      res.parents[source - owned.begin] = source;
      frontier.push_back(source);
    }

    std::vector<u64> next;
    u64 level = 0;
    for (;;) {
      ctx.set_level(level);

      // Bucket the outgoing (target, parent) words by target owner. The
      // frontier walk is split into `threads` sub-units; concatenating
      // their buckets in sub-unit order keeps the buffers byte-identical
      // to a single-threaded walk.
      std::vector<std::vector<u64>> send(p);
      for (u64 t = 0; t < cfg.threads; ++t) {
        const Range chunk = chunk_range(frontier.size(), cfg.threads, t);
        for (u64 k = chunk.begin; k < chunk.end; ++k) {
          const u64 u = frontier[k];
          auto [first, last] = csr.neighbors(u);
          for (const u64* it = first; it != last; ++it) {
            send[find_owner(*it, n, p)].push_back(pack_pair(*it, u));
          }
        }
      }

      std::vector<std::vector<u64>> recv =
          ctx.alltoallv(everyone, std::move(send), "bfs_1d/frontier_exchange");

      next.clear();
      for (const std::vector<u64>& part : recv) {
        for (u64 word : part) {
          const u64 v = unpack_hi(word);
          const u64 parent = unpack_lo(word);
          res.merges += 1;
          const u64 local = v - owned.begin;
          if (res.distances[local] == kInfDistance) {
            res.distances[local] = level + 1;
            res.parents[local] = parent;
            next.push_back(v);
          }
        }
      }

      const u64 any = ctx.allreduce(everyone, next.empty() ? 0 : 1, ReduceOp::Or,
                                    "bfs_1d/termination");
      ++level;
      frontier.swap(next);
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
  run.merge_ops.resize(p);
  for (u64 r = 0; r < p; ++r) {
    RankResult& block = per_rank[r];
    for (u64 k = 0; k < block.distances.size(); ++k) {
      run.output.distances[block.first_owned + k] = block.distances[k];
      run.output.parents[block.first_owned + k] = block.parents[k];
    }
    run.merge_ops[r] = block.merges;
  }
  run.output.reached = count_reached(run.output.distances);
  return run;
}

}  // namespace graphwave
