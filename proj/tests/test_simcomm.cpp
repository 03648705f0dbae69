#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "graphwave/comm_stats.hpp"
#include "graphwave/proc_grid.hpp"
#include "graphwave/simulator.hpp"
#include "graphwave/vector_layout.hpp"

using namespace graphwave;

namespace {

std::vector<u64> iota_range(Range r) {
  std::vector<u64> out(r.size());
  std::iota(out.begin(), out.end(), r.begin);
  return out;
}

}  // namespace

TEST_CASE("process grid indexing and groups") {
  ProcGrid g(2, 3);
  CHECK(g.size() == 6);
  CHECK_FALSE(g.square());
  CHECK(g.rank_of(1, 2) == 5);
  CHECK(g.row_of(5) == 1);
  CHECK(g.col_of(5) == 2);
  CHECK(g.row_group(0) == std::vector<u64>{0, 1, 2});
  CHECK(g.row_group(1) == std::vector<u64>{3, 4, 5});
  CHECK(g.col_group(1) == std::vector<u64>{1, 4});
  CHECK(g.all_group() == std::vector<u64>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(g.transpose_partner(0), ConfigError);
  CHECK_THROWS_AS(ProcGrid(0, 2), ConfigError);

  ProcGrid sq(3, 3);
  CHECK(sq.transpose_partner(sq.rank_of(1, 2)) == sq.rank_of(2, 1));
  CHECK(sq.transpose_partner(sq.rank_of(2, 2)) == sq.rank_of(2, 2));
}

TEST_CASE("alltoallv delivers personalized buffers and counts exactly") {
  ProcGrid grid(2, 2);
  for (ExecMode mode : {ExecMode::Concurrent, ExecMode::Sequential}) {
    auto [results, stats] = run_ranks(grid, mode, [&](RankCtx& ctx) {
      std::vector<u64> group = ctx.grid().all_group();
      std::vector<std::vector<u64>> send(4);
      for (u64 d = 0; d < 4; ++d) {
        send[d] = {ctx.rank() * 10 + d};
      }
      std::vector<std::vector<u64>> recv = ctx.alltoallv(group, std::move(send), "test/a2a");
      std::vector<u64> flat;
      for (const auto& part : recv) {
        flat.insert(flat.end(), part.begin(), part.end());
      }
      return flat;
    });

    for (u64 r = 0; r < 4; ++r) {
      CHECK(results[r] == std::vector<u64>{0 * 10 + r, 1 * 10 + r, 2 * 10 + r, 3 * 10 + r});
    }
    const PhaseCounters& a2a = stats.phase(Phase::Alltoall);
    CHECK(a2a.words_sent == 12);
    CHECK(a2a.words_recv == 12);
    CHECK(a2a.self_words == 4);
    CHECK(a2a.input_words == 16);
    CHECK(a2a.messages == 12);
    for (u64 r = 0; r < 4; ++r) {
      const PhaseCounters& mine = stats.per_rank[r][static_cast<unsigned>(Phase::Alltoall)];
      CHECK(mine.words_sent == 3);
      CHECK(mine.words_recv == 3);
      CHECK(mine.self_words == 1);
      CHECK(mine.input_words == 4);
      CHECK(mine.messages == 3);
    }
  }
}

TEST_CASE("alltoallv counts only non-empty transfers as messages") {
  ProcGrid grid(3, 1);
  auto [results, stats] = run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
    std::vector<std::vector<u64>> send(3);
    if (ctx.rank() == 0) {
      send[1] = {7, 8};  // the only traffic: two words 0 -> 1
    }
    std::vector<std::vector<u64>> recv = ctx.alltoallv(ctx.grid().all_group(), std::move(send), "test/sparse");
    u64 got = 0;
    for (const auto& part : recv) {
      got += part.size();
    }
    return got;
  });
  CHECK(results == std::vector<u64>{0, 2, 0});
  const PhaseCounters& a2a = stats.phase(Phase::Alltoall);
  CHECK(a2a.words_sent == 2);
  CHECK(a2a.words_recv == 2);
  CHECK(a2a.self_words == 0);
  CHECK(a2a.input_words == 2);
  CHECK(a2a.messages == 1);
}

TEST_CASE("allgatherv concatenates in rank order with exact accounting") {
  ProcGrid grid(3, 1);
  for (ExecMode mode : {ExecMode::Concurrent, ExecMode::Sequential}) {
    auto [results, stats] = run_ranks(grid, mode, [&](RankCtx& ctx) {
      std::vector<u64> local;
      if (ctx.rank() == 0) local = {5};
      if (ctx.rank() == 1) local = {6, 7};
      return ctx.allgatherv(ctx.grid().all_group(), std::move(local), "test/ag");
    });
    for (u64 r = 0; r < 3; ++r) {
      CHECK(results[r] == std::vector<u64>{5, 6, 7});
    }
    const PhaseCounters& ag = stats.phase(Phase::Allgather);
    CHECK(ag.words_sent == 6);   // 1*2 + 2*2 + 0
    CHECK(ag.words_recv == 6);   // 2 + 1 + 3
    CHECK(ag.self_words == 3);   // own contribution stays local
    CHECK(ag.input_words == 3);  // total payload, counted once at source
    CHECK(ag.messages == 4);     // two non-empty contributors x two peers

    const unsigned ph = static_cast<unsigned>(Phase::Allgather);
    CHECK(stats.per_rank[0][ph].words_sent == 2);
    CHECK(stats.per_rank[0][ph].words_recv == 2);
    CHECK(stats.per_rank[1][ph].words_sent == 4);
    CHECK(stats.per_rank[1][ph].words_recv == 1);
    CHECK(stats.per_rank[2][ph].words_sent == 0);
    CHECK(stats.per_rank[2][ph].words_recv == 3);
    CHECK(stats.per_rank[2][ph].messages == 0);
  }
}

TEST_CASE("allreduce folds sum, max, and boolean or") {
  ProcGrid grid(4, 1);
  auto [results, stats] = run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
    std::vector<u64> group = ctx.grid().all_group();
    std::vector<u64> out;
    out.push_back(ctx.allreduce(group, ctx.rank() + 1, ReduceOp::Sum, "test/sum"));
    out.push_back(ctx.allreduce(group, ctx.rank() * 10, ReduceOp::Max, "test/max"));
    out.push_back(ctx.allreduce(group, ctx.rank() == 2 ? 5 : 0, ReduceOp::Or, "test/or"));
    out.push_back(ctx.allreduce(group, 0, ReduceOp::Or, "test/or0"));
    return out;
  });
  for (u64 r = 0; r < 4; ++r) {
    CHECK(results[r] == std::vector<u64>{10, 30, 1, 0});
  }
  const PhaseCounters& red = stats.phase(Phase::Allreduce);
  CHECK(red.words_sent == 16);  // 4 reductions x 4 ranks x 1 word
  CHECK(red.words_recv == 16);
  CHECK(red.input_words == 16);
  CHECK(red.messages == 16);
  CHECK(red.self_words == 0);
}

TEST_CASE("single-rank collectives stay off the network") {
  ProcGrid grid(1, 1);
  auto [results, stats] = run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
    std::vector<std::vector<u64>> recv =
        ctx.alltoallv({0}, {{1, 2, 3}}, "test/self-a2a");
    std::vector<u64> gathered = ctx.allgatherv({0}, {4, 5}, "test/self-ag");
    u64 reduced = ctx.allreduce({0}, 9, ReduceOp::Max, "test/self-red");
    return recv[0].size() + gathered.size() + reduced;
  });
  CHECK(results[0] == 3 + 2 + 9);
  CHECK(stats.total_network_words() == 0);
  CHECK(stats.phase(Phase::Alltoall).self_words == 3);
  CHECK(stats.phase(Phase::Alltoall).input_words == 3);
  CHECK(stats.phase(Phase::Allgather).self_words == 2);
  CHECK(stats.phase(Phase::Allreduce).self_words == 1);
  CHECK(stats.phase(Phase::Allreduce).messages == 0);
}

TEST_CASE("pairwise exchange swaps payloads and charges the transpose phase") {
  ProcGrid grid(2, 2);
  auto [results, stats] = run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
    const u64 partner = ctx.grid().transpose_partner(ctx.rank());
    std::vector<u64> got = ctx.pairwise_exchange(partner, {ctx.rank()}, "test/swap");
    REQUIRE(got.size() == 1);
    return got[0];
  });
  CHECK(results == std::vector<u64>{0, 2, 1, 3});
  const PhaseCounters& tr = stats.phase(Phase::Transpose);
  CHECK(tr.words_sent == 2);   // ranks 1 and 2 cross the network
  CHECK(tr.words_recv == 2);
  CHECK(tr.self_words == 2);   // ranks 0 and 3 are their own partners
  CHECK(tr.input_words == 4);
  CHECK(tr.messages == 2);
}

TEST_CASE("collective contributions land on the caller's current level") {
  ProcGrid grid(2, 1);
  auto [results, stats] = run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
    std::vector<u64> group = ctx.grid().all_group();
    ctx.set_level(0);
    ctx.allreduce(group, 1, ReduceOp::Sum, "test/lvl0");
    ctx.set_level(2);
    ctx.allreduce(group, 1, ReduceOp::Sum, "test/lvl2");
    return u64{0};
  });
  (void)results;
  REQUIRE(stats.per_level.size() == 3);
  const unsigned ph = static_cast<unsigned>(Phase::Allreduce);
  CHECK(stats.per_level[0][ph].words_sent == 2);
  CHECK(stats.per_level[1][ph] == PhaseCounters{});
  CHECK(stats.per_level[2][ph].words_sent == 2);
  CHECK(stats.total[ph].words_sent == 4);
}

TEST_CASE("word conservation holds on irregular exchanges") {
  ProcGrid grid(2, 3);
  auto [results, stats] = run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
    std::vector<u64> group = ctx.grid().all_group();
    for (u64 round = 0; round < 3; ++round) {
      ctx.set_level(round);
      std::vector<std::vector<u64>> send(group.size());
      for (u64 d = 0; d < group.size(); ++d) {
        const u64 count = (ctx.rank() * 7 + d * 3 + round) % 5;
        send[d].assign(count, ctx.rank());
      }
      ctx.alltoallv(group, std::move(send), "test/irregular");
      ctx.allgatherv(group, std::vector<u64>(ctx.rank() % 3, 0), "test/irregular-ag");
    }
    return u64{0};
  });
  (void)results;
  for (unsigned ph = 0; ph < kPhaseCount; ++ph) {
    u64 sent = 0;
    u64 recv = 0;
    for (const PhaseArray& pa : stats.per_rank) {
      sent += pa[ph].words_sent;
      recv += pa[ph].words_recv;
    }
    CHECK(sent == recv);
    CHECK(sent == stats.total[ph].words_sent);
    CHECK(recv == stats.total[ph].words_recv);
  }
  // For personalized exchanges, everything a rank contributes either stays
  // home or goes out exactly once.
  const PhaseCounters& a2a = stats.phase(Phase::Alltoall);
  CHECK(a2a.input_words == a2a.self_words + a2a.words_sent);

  // Per-level rows add up to the totals.
  PhaseArray level_sum{};
  for (const PhaseArray& pa : stats.per_level) {
    for (unsigned ph = 0; ph < kPhaseCount; ++ph) {
      level_sum[ph] += pa[ph];
    }
  }
  CHECK(level_sum == stats.total);
}

TEST_CASE("mismatched collectives on one group are reported with both sites") {
  ProcGrid grid(2, 1);
  CHECK_THROWS_WITH_AS(
      run_ranks(grid, ExecMode::Sequential,
                [&](RankCtx& ctx) {
                  std::vector<u64> group = ctx.grid().all_group();
                  if (ctx.rank() == 0) {
                    ctx.alltoallv(group, {{}, {}}, "test/site-a");
                  } else {
                    ctx.allgatherv(group, {}, "test/site-b");
                  }
                  return u64{0};
                }),
      doctest::Contains("collective mismatch"), ProtocolError);

  // Same kind and group but different call sites is still a mismatch.
  CHECK_THROWS_WITH_AS(
      run_ranks(grid, ExecMode::Sequential,
                [&](RankCtx& ctx) {
                  std::vector<u64> group = ctx.grid().all_group();
                  ctx.allreduce(group, 0, ReduceOp::Sum,
                                ctx.rank() == 0 ? "test/site-a" : "test/site-b");
                  return u64{0};
                }),
      doctest::Contains("test/site-b"), ProtocolError);

  // Different reduce operators cannot be combined either.
  CHECK_THROWS_WITH_AS(
      run_ranks(grid, ExecMode::Sequential,
                [&](RankCtx& ctx) {
                  std::vector<u64> group = ctx.grid().all_group();
                  ctx.allreduce(group, 0, ctx.rank() == 0 ? ReduceOp::Sum : ReduceOp::Max,
                                "test/site-c");
                  return u64{0};
                }),
      doctest::Contains("allreduce"), ProtocolError);
}

TEST_CASE("a rank finishing while its group waits is an error") {
  ProcGrid grid(2, 1);
  for (ExecMode mode : {ExecMode::Concurrent, ExecMode::Sequential}) {
    CHECK_THROWS_WITH_AS(
        run_ranks(grid, mode,
                  [&](RankCtx& ctx) {
                    if (ctx.rank() == 0) {
                      ctx.allreduce({0, 1}, 1, ReduceOp::Sum, "test/abandoned");
                    }
                    return u64{0};
                  }),
        doctest::Contains("finished"), ProtocolError);
  }
}

TEST_CASE("cyclic group dependencies are reported as deadlock") {
  ProcGrid grid(3, 1);
  for (ExecMode mode : {ExecMode::Concurrent, ExecMode::Sequential}) {
    CHECK_THROWS_WITH_AS(
        run_ranks(grid, mode,
                  [&](RankCtx& ctx) {
                    if (ctx.rank() == 0) ctx.allreduce({0, 1}, 0, ReduceOp::Sum, "test/d0");
                    if (ctx.rank() == 1) ctx.allreduce({1, 2}, 0, ReduceOp::Sum, "test/d1");
                    if (ctx.rank() == 2) ctx.allreduce({0, 2}, 0, ReduceOp::Sum, "test/d2");
                    return u64{0};
                  }),
        doctest::Contains("deadlock"), ProtocolError);
  }
}

TEST_CASE("malformed groups are rejected") {
  ProcGrid grid(2, 1);
  CHECK_THROWS_WITH_AS(run_ranks(grid, ExecMode::Sequential,
                                 [&](RankCtx& ctx) {
                                   if (ctx.rank() == 0) {
                                     ctx.allreduce({1}, 0, ReduceOp::Sum, "test/not-member");
                                   }
                                   return u64{0};
                                 }),
                       doctest::Contains("not a member"), ProtocolError);
  CHECK_THROWS_WITH_AS(run_ranks(grid, ExecMode::Sequential,
                                 [&](RankCtx& ctx) {
                                   ctx.allreduce({0, 7}, 0, ReduceOp::Sum, "test/out-of-grid");
                                   return u64{0};
                                 }),
                       doctest::Contains("outside the grid"), ProtocolError);
  CHECK_THROWS_WITH_AS(run_ranks(grid, ExecMode::Sequential,
                                 [&](RankCtx& ctx) {
                                   std::vector<std::vector<u64>> send(1);
                                   ctx.alltoallv({0, 1}, std::move(send), "test/short-send");
                                   return u64{0};
                                 }),
                       doctest::Contains("send list"), ProtocolError);
}

TEST_CASE("a rank program exception surfaces as the root cause") {
  ProcGrid grid(2, 1);
  for (ExecMode mode : {ExecMode::Concurrent, ExecMode::Sequential}) {
    CHECK_THROWS_WITH_AS(
        run_ranks(grid, mode,
                  [&](RankCtx& ctx) {
                    if (ctx.rank() == 1) {
                      throw std::runtime_error("boom on rank 1");
                    }
                    ctx.allreduce({0, 1}, 0, ReduceOp::Sum, "test/waiting");
                    return u64{0};
                  }),
        "boom on rank 1", std::runtime_error);
  }
}

TEST_CASE("sequential and concurrent execution produce identical stats") {
  ProcGrid grid(2, 2);
  auto program = [](RankCtx& ctx) {
    std::vector<u64> all = ctx.grid().all_group();
    std::vector<u64> row = ctx.grid().row_group(ctx.grid().row_of(ctx.rank()));
    std::vector<u64> col = ctx.grid().col_group(ctx.grid().col_of(ctx.rank()));
    u64 checksum = 0;
    for (u64 round = 0; round < 4; ++round) {
      ctx.set_level(round);
      std::vector<u64> gathered =
          ctx.allgatherv(col, std::vector<u64>(ctx.rank() + round, round), "prog/expand");
      checksum += gathered.size();
      std::vector<std::vector<u64>> send(row.size());
      for (u64 k = 0; k < row.size(); ++k) {
        send[k].assign((ctx.rank() * 3 + k + round) % 4, ctx.rank());
      }
      std::vector<std::vector<u64>> recv = ctx.alltoallv(row, std::move(send), "prog/fold");
      for (const auto& part : recv) {
        checksum += std::accumulate(part.begin(), part.end(), u64{0});
      }
      checksum += ctx.allreduce(all, checksum % 97, ReduceOp::Max, "prog/done");
    }
    return checksum;
  };
  auto [res_c, stats_c] = run_ranks(grid, ExecMode::Concurrent, program);
  auto [res_s, stats_s] = run_ranks(grid, ExecMode::Sequential, program);
  auto [res_c2, stats_c2] = run_ranks(grid, ExecMode::Concurrent, program);
  CHECK(res_c == res_s);
  CHECK(res_c == res_c2);
  CHECK(stats_c == stats_s);
  CHECK(stats_c == stats_c2);
}

TEST_CASE("exec mode env override") {
  unsetenv("GRAPHWAVE_SEQ");
  CHECK(exec_mode_from_env(ExecMode::Concurrent) == ExecMode::Concurrent);
  CHECK(exec_mode_from_env(ExecMode::Sequential) == ExecMode::Sequential);
  setenv("GRAPHWAVE_SEQ", "1", 1);
  CHECK(exec_mode_from_env(ExecMode::Concurrent) == ExecMode::Sequential);
  setenv("GRAPHWAVE_SEQ", "0", 1);
  CHECK(exec_mode_from_env(ExecMode::Sequential) == ExecMode::Concurrent);
  unsetenv("GRAPHWAVE_SEQ");
}

TEST_CASE("two-level vector pieces tile the index space") {
  // n=10 on a 2x2 grid: row blocks [0,5) and [5,10), sub-chunks 3+2.
  ProcGrid sq(2, 2);
  VectorDist dist(10, sq);
  CHECK(dist.rowwise_piece(sq.rank_of(0, 0)) == Range{0, 3});
  CHECK(dist.rowwise_piece(sq.rank_of(0, 1)) == Range{3, 5});
  CHECK(dist.rowwise_piece(sq.rank_of(1, 0)) == Range{5, 8});
  CHECK(dist.rowwise_piece(sq.rank_of(1, 1)) == Range{8, 10});
  CHECK(dist.colwise_piece(sq.rank_of(0, 0)) == Range{0, 3});
  CHECK(dist.colwise_piece(sq.rank_of(1, 0)) == Range{3, 5});
  CHECK(dist.colwise_piece(sq.rank_of(0, 1)) == Range{5, 8});
  CHECK(dist.colwise_piece(sq.rank_of(1, 1)) == Range{8, 10});

  for (u64 n : {0ull, 1ull, 7ull, 10ull, 11ull, 64ull}) {
    for (auto [pr, pc] : {std::pair<u64, u64>{2, 2}, {2, 3}, {3, 2}, {1, 4}, {4, 1}}) {
      ProcGrid grid(pr, pc);
      VectorDist d(n, grid);
      u64 row_covered = 0;
      u64 col_covered = 0;
      for (u64 r = 0; r < grid.size(); ++r) {
        Range rp = d.rowwise_piece(r);
        Range cp = d.colwise_piece(r);
        row_covered += rp.size();
        col_covered += cp.size();
        for (u64 v = rp.begin; v < rp.end; ++v) {
          CHECK(d.rowwise_owner(v) == r);
        }
        for (u64 v = cp.begin; v < cp.end; ++v) {
          CHECK(d.colwise_owner(v) == r);
        }
      }
      CHECK(row_covered == n);
      CHECK(col_covered == n);
    }
  }
}

TEST_CASE("diagonal distribution parks everything on the diagonal") {
  ProcGrid sq(3, 3);
  VectorDist d(10, sq, true);
  CHECK(d.rowwise_piece(sq.rank_of(0, 0)) == Range{0, 4});
  CHECK(d.rowwise_piece(sq.rank_of(1, 1)) == Range{4, 8});
  CHECK(d.rowwise_piece(sq.rank_of(2, 2)) == Range{8, 10});
  CHECK(d.rowwise_piece(sq.rank_of(0, 1)).empty());
  CHECK(d.colwise_piece(sq.rank_of(1, 0)).empty());
  CHECK(d.rowwise_owner(5) == sq.rank_of(1, 1));
  CHECK(d.colwise_owner(9) == sq.rank_of(2, 2));
  CHECK_THROWS_AS(VectorDist(10, ProcGrid(2, 3), true), ConfigError);
  CHECK_THROWS_AS(d.rowwise_owner(10), ContractError);
}

TEST_CASE("transpose_vector moves pieces between the two distributions") {
  auto run_transpose = [](const ProcGrid& grid, u64 n, bool diagonal, TransposeMode mode) {
    VectorDist dist(n, grid, diagonal);
    return run_ranks(grid, ExecMode::Concurrent, [&](RankCtx& ctx) {
      std::vector<u64> mine = iota_range(dist.rowwise_piece(ctx.rank()));
      return transpose_vector(ctx, dist, std::move(mine), mode, "test/transpose");
    });
  };

  SUBCASE("square grid, pairwise and general agree") {
    ProcGrid grid(2, 2);
    for (u64 n : {10ull, 7ull, 16ull}) {
      auto [pw, pw_stats] = run_transpose(grid, n, false, TransposeMode::Pairwise);
      auto [gen, gen_stats] = run_transpose(grid, n, false, TransposeMode::General);
      auto [au, au_stats] = run_transpose(grid, n, false, TransposeMode::Auto);
      VectorDist dist(n, grid);
      for (u64 r = 0; r < grid.size(); ++r) {
        CHECK(pw[r] == iota_range(dist.colwise_piece(r)));
        CHECK(gen[r] == pw[r]);
        CHECK(au[r] == pw[r]);
      }
      CHECK(au_stats == pw_stats);
      CHECK(pw_stats.phase(Phase::Transpose).input_words == n);
      CHECK(gen_stats.phase(Phase::Transpose).input_words == n);
    }
  }

  SUBCASE("rectangular grid requires the general path") {
    ProcGrid grid(2, 3);
    for (u64 n : {11ull, 12ull, 5ull}) {
      auto [gen, gen_stats] = run_transpose(grid, n, false, TransposeMode::General);
      auto [au, au_stats] = run_transpose(grid, n, false, TransposeMode::Auto);
      VectorDist dist(n, grid);
      for (u64 r = 0; r < grid.size(); ++r) {
        CHECK(gen[r] == iota_range(dist.colwise_piece(r)));
        CHECK(au[r] == gen[r]);
      }
      CHECK(au_stats == gen_stats);
    }
    CHECK_THROWS_AS(run_transpose(grid, 11, false, TransposeMode::Pairwise), ConfigError);
  }

  SUBCASE("diagonal distribution transposes without network traffic") {
    ProcGrid grid(2, 2);
    auto [res, stats] = run_transpose(grid, 10, true, TransposeMode::Pairwise);
    VectorDist dist(10, grid, true);
    for (u64 r = 0; r < grid.size(); ++r) {
      CHECK(res[r] == iota_range(dist.colwise_piece(r)));
    }
    CHECK(stats.phase(Phase::Transpose).words_sent == 0);
    CHECK(stats.phase(Phase::Transpose).self_words == 10);
  }
}
