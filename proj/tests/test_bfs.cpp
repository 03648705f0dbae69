#include <algorithm>
#include <vector>

#include <doctest.h>

#include "graphwave/bfs_1d.hpp"
#include "graphwave/bfs_2d.hpp"
#include "graphwave/bfs_output.hpp"
#include "graphwave/bfs_serial.hpp"
#include "graphwave/block2d.hpp"
#include "graphwave/csr.hpp"
#include "graphwave/edge_list.hpp"
#include "graphwave/rng.hpp"
#include "graphwave/shuffle.hpp"
#include "graphwave/validate.hpp"
#include "test_util.hpp"

using namespace graphwave;

namespace {

EdgeList path3() {
  EdgeList g;
  g.n = 3;
  g.edges = {{0, 1}, {1, 2}};
  return symmetrize(g);
}

EdgeList random_sym(u64 n, u64 m, u64 seed) {
  return symmetrize(testutil::random_edge_list(n, m, seed));
}

void check_valid_run(const EdgeList& g, const BfsOutput& out) {
  const std::vector<Violation> v = validate_bfs(g, out);
  CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v[0].check + ": " + v[0].detail));
  CHECK(distances_from_parents(out.parents, out.source) == out.distances);
}

}  // namespace

TEST_CASE("serial traversal of a three-vertex path") {
  const EdgeList g = path3();
  const BfsOutput out = bfs_serial(g, 0);
  CHECK(out.distances == std::vector<u64>{0, 1, 2});
  CHECK(out.parents == std::vector<u64>{0, 0, 1});
  CHECK(out.levels == 3);
  CHECK(out.reached == 3);
  check_valid_run(g, out);

  const BfsOutput mid = bfs_serial(g, 1);
  CHECK(mid.distances == std::vector<u64>{1, 0, 1});
  CHECK(mid.levels == 2);
}

TEST_CASE("serial traversal leaves the far component untouched") {
  EdgeList g;
  g.n = 5;
  g.edges = {{0, 1}, {3, 4}};
  g = symmetrize(g);
  const BfsOutput out = bfs_serial(g, 0);
  CHECK(out.distances == std::vector<u64>{0, 1, kInfDistance, kInfDistance, kInfDistance});
  CHECK(out.parents[2] == kNoParent);
  CHECK(out.reached == 2);
  CHECK(out.levels == 2);
  check_valid_run(g, out);
}

TEST_CASE("serial traversal of an isolated source") {
  EdgeList g;
  g.n = 4;
  g.edges = {{1, 2}};
  g = symmetrize(g);
  const BfsOutput out = bfs_serial(g, 0);
  CHECK(out.reached == 1);
  CHECK(out.levels == 1);
  CHECK(out.distances[0] == 0);
  CHECK(out.parents[0] == 0);
  check_valid_run(g, out);
}

TEST_CASE("serial traversal respects edge direction") {
  EdgeList g;
  g.n = 3;
  g.directed = true;
  g.edges = {{0, 1}, {2, 1}};
  const BfsOutput out = bfs_serial(g, 0);
  CHECK(out.distances == std::vector<u64>{0, 1, kInfDistance});
  check_valid_run(g, out);
}

TEST_CASE("serial distances match a priority-queue oracle") {
  for (u64 trial = 0; trial < 60; ++trial) {
    const EdgeList g = random_sym(40 + trial % 13, 90, 1000 + trial);
    SplitMix64 rng = stream_for(77, trial);
    const u64 source = rng.next_below(g.n);
    const BfsOutput out = bfs_serial(g, source);
    CHECK(out.distances == testutil::dijkstra_unit(g, source));
    check_valid_run(g, out);
  }
}

TEST_CASE("1d traversal of the path with frozen counters") {
  const EdgeList g = path3();
  Bfs1dConfig cfg;
  cfg.ranks = 2;
  const BfsRun run = bfs_1d(g, 0, cfg);
  CHECK(run.output.distances == std::vector<u64>{0, 1, 2});
  CHECK(run.output.parents == std::vector<u64>{0, 0, 1});
  CHECK(run.output.levels == 3);
  CHECK(run.output.reached == 3);
  check_valid_run(g, run.output);

  // Owner blocks are {0,1} and {2}; only 1->2 and 2->1 cross rank lines.
  const PhaseCounters& a2a = run.stats.phase(Phase::Alltoall);
  CHECK(a2a.words_recv == 2);
  CHECK(a2a.input_words == 4);  // one word per adjacency entry of a reached vertex
  CHECK(a2a.self_words == 2);
  const PhaseCounters& red = run.stats.phase(Phase::Allreduce);
  CHECK(red.words_sent == 6);  // three levels, two ranks
  CHECK(run.merge_ops == std::vector<u64>{3, 1});
}

TEST_CASE("2d traversal of the path with frozen counters") {
  const EdgeList g = path3();
  Bfs2dConfig cfg;
  cfg.grid = ProcGrid(2, 2);
  const BfsRun run = bfs_2d(g, 0, cfg);
  CHECK(run.output.distances == std::vector<u64>{0, 1, 2});
  CHECK(run.output.parents == std::vector<u64>{0, 0, 1});
  CHECK(run.output.levels == 3);
  CHECK(run.output.reached == 3);
  check_valid_run(g, run.output);

  // Hand-traced traffic for this graph on the 2x2 grid.
  const PhaseCounters& tr = run.stats.phase(Phase::Transpose);
  CHECK(tr.words_sent == 2);
  CHECK(tr.self_words == 1);
  CHECK(tr.input_words == 3);
  CHECK(tr.messages == 2);
  const PhaseCounters& ag = run.stats.phase(Phase::Allgather);
  CHECK(ag.input_words == 3);  // cumulative frontier size = reached
  CHECK(ag.words_sent == 3);
  CHECK(ag.words_recv == 3);
  CHECK(ag.self_words == 3);
  const PhaseCounters& fold = run.stats.phase(Phase::Alltoall);
  CHECK(fold.words_sent == 1);
  CHECK(fold.self_words == 3);
  CHECK(fold.input_words == 4);
  CHECK(fold.messages == 1);
  const PhaseCounters& red = run.stats.phase(Phase::Allreduce);
  CHECK(red.words_sent == 12);  // three levels, four ranks

  CHECK(run.merge_ops == std::vector<u64>{1, 2, 1, 0});
}

TEST_CASE("all engines agree with the serial distances") {
  for (u64 trial = 0; trial < 12; ++trial) {
    const u64 n = 48 + 7 * (trial % 5);
    EdgeList g = random_sym(n, 130, 4000 + trial);
    g = shuffle_vertices(g, 42 + trial);
    SplitMix64 rng = stream_for(99, trial);
    const u64 source = rng.next_below(g.n);
    const BfsOutput ref = bfs_serial(g, source);
    check_valid_run(g, ref);

    for (u64 p : {1ull, 2ull, 3ull, 5ull}) {
      for (u64 threads : {1ull, 3ull}) {
        Bfs1dConfig cfg;
        cfg.ranks = p;
        cfg.threads = threads;
        const BfsRun run = bfs_1d(g, source, cfg);
        CHECK(run.output.distances == ref.distances);
        CHECK(run.output.levels == ref.levels);
        CHECK(run.output.reached == ref.reached);
        check_valid_run(g, run.output);
      }
    }

    struct GridCase {
      u64 p_r, p_c;
      bool diagonal;
    };
    for (const GridCase gc : {GridCase{1, 1, false}, {2, 2, false}, {2, 3, false},
                              {3, 2, false}, {2, 2, true}, {4, 4, false}}) {
      for (SpmsvMode backend : {SpmsvMode::Spa, SpmsvMode::Heap}) {
        Bfs2dConfig cfg;
        cfg.grid = ProcGrid(gc.p_r, gc.p_c);
        cfg.diagonal = gc.diagonal;
        cfg.backend = backend;
        const BfsRun run = bfs_2d(g, source, cfg);
        CHECK(run.output.distances == ref.distances);
        CHECK(run.output.levels == ref.levels);
        CHECK(run.output.reached == ref.reached);
        check_valid_run(g, run.output);
      }
    }
  }
}

TEST_CASE("1d exchange traffic equals the non-local adjacency of the reached set") {
  for (u64 trial = 0; trial < 8; ++trial) {
    EdgeList g = random_sym(50 + trial, 120, 6000 + trial);
    g = shuffle_vertices(g, trial);
    SplitMix64 rng = stream_for(5, trial);
    const u64 source = rng.next_below(g.n);
    for (u64 p : {1ull, 2ull, 4ull, 7ull}) {
      Bfs1dConfig cfg;
      cfg.ranks = p;
      const BfsRun run = bfs_1d(g, source, cfg);

      const std::vector<std::set<u64>> adj = testutil::adjacency_sets(g);
      u64 expect_network = 0;
      u64 expect_total = 0;
      for (u64 u = 0; u < g.n; ++u) {
        if (run.output.distances[u] == kInfDistance) {
          continue;
        }
        for (u64 v : adj[u]) {
          expect_total += 1;
          if (find_owner(v, g.n, p) != find_owner(u, g.n, p)) {
            expect_network += 1;
          }
        }
      }
      const PhaseCounters& a2a = run.stats.phase(Phase::Alltoall);
      CHECK(a2a.words_recv == expect_network);
      CHECK(a2a.words_sent == expect_network);
      CHECK(a2a.input_words == expect_total);
      CHECK(a2a.self_words == expect_total - expect_network);

      u64 merged = 0;
      for (u64 m : run.merge_ops) {
        merged += m;
      }
      CHECK(merged == expect_total);
    }
  }
}

TEST_CASE("2d expansion traffic equals the frontier sizes") {
  for (u64 trial = 0; trial < 6; ++trial) {
    EdgeList g = random_sym(60, 150, 7000 + trial);
    g = shuffle_vertices(g, 100 + trial);
    SplitMix64 rng = stream_for(6, trial);
    const u64 source = rng.next_below(g.n);
    for (const auto& [pr, pc] : {std::pair<u64, u64>{1, 1}, {2, 2}, {2, 3}, {4, 4}}) {
      Bfs2dConfig cfg;
      cfg.grid = ProcGrid(pr, pc);
      const BfsRun run = bfs_2d(g, source, cfg);

      // Cumulative allgather payload = one word per reached vertex.
      const PhaseCounters& ag = run.stats.phase(Phase::Allgather);
      CHECK(ag.input_words == run.output.reached);

      // Per level it equals that level's frontier population.
      const unsigned agp = static_cast<unsigned>(Phase::Allgather);
      REQUIRE(run.stats.per_level.size() == run.output.levels);
      for (u64 lvl = 0; lvl < run.output.levels; ++lvl) {
        const u64 frontier_size = static_cast<u64>(
            std::count(run.output.distances.begin(), run.output.distances.end(), lvl));
        CHECK(run.stats.per_level[lvl][agp].input_words == frontier_size);
      }

      // Each matrix entry can fire at most once per traversal, so a rank
      // never folds more words than its block holds.
      const std::vector<Block2D> blocks = partition_2d(g, pr, pc);
      const unsigned a2ap = static_cast<unsigned>(Phase::Alltoall);
      u64 total_folded = 0;
      for (u64 r = 0; r < run.stats.p(); ++r) {
        CHECK(run.stats.per_rank[r][a2ap].input_words <= blocks[r].nnz());
        total_folded += run.stats.per_rank[r][a2ap].input_words;
      }
      u64 total_nnz = 0;
      for (const Block2D& b : blocks) {
        total_nnz += b.nnz();
      }
      CHECK(total_folded <= total_nnz);
    }
  }
}

TEST_CASE("thread sub-bucketing changes nothing observable") {
  EdgeList g = random_sym(64, 200, 8800);
  const u64 source = 3;
  BfsRun base;
  bool first = true;
  for (u64 threads : {1ull, 2ull, 4ull, 8ull}) {
    Bfs1dConfig cfg;
    cfg.ranks = 4;
    cfg.threads = threads;
    BfsRun run = bfs_1d(g, source, cfg);
    if (first) {
      base = std::move(run);
      first = false;
    } else {
      CHECK(run.output.distances == base.output.distances);
      CHECK(run.output.parents == base.output.parents);
      CHECK(run.stats == base.stats);
      CHECK(run.merge_ops == base.merge_ops);
    }
  }
}

TEST_CASE("engines are deterministic across execution modes") {
  EdgeList g = random_sym(70, 180, 9100);
  const u64 source = 11;

  Bfs1dConfig c1;
  c1.ranks = 5;
  Bfs1dConfig c1s = c1;
  c1s.mode = ExecMode::Sequential;
  const BfsRun r1a = bfs_1d(g, source, c1);
  const BfsRun r1b = bfs_1d(g, source, c1s);
  const BfsRun r1c = bfs_1d(g, source, c1);
  CHECK(r1a.output.parents == r1b.output.parents);
  CHECK(r1a.stats == r1b.stats);
  CHECK(r1a.stats == r1c.stats);
  CHECK(r1a.merge_ops == r1b.merge_ops);

  Bfs2dConfig c2;
  c2.grid = ProcGrid(2, 3);
  Bfs2dConfig c2s = c2;
  c2s.mode = ExecMode::Sequential;
  const BfsRun r2a = bfs_2d(g, source, c2);
  const BfsRun r2b = bfs_2d(g, source, c2s);
  const BfsRun r2c = bfs_2d(g, source, c2);
  CHECK(r2a.output.parents == r2b.output.parents);
  CHECK(r2a.stats == r2b.stats);
  CHECK(r2a.stats == r2c.stats);
  CHECK(r2a.merge_ops == r2b.merge_ops);
}

TEST_CASE("diagonal distribution funnels every merge onto the diagonal") {
  EdgeList g = random_sym(80, 240, 9400);
  Bfs2dConfig cfg;
  cfg.grid = ProcGrid(4, 4);
  cfg.diagonal = true;
  const BfsRun run = bfs_2d(g, 7, cfg);
  const BfsOutput ref = bfs_serial(g, 7);
  CHECK(run.output.distances == ref.distances);

  const MergeImbalance imb = merge_imbalance(cfg.grid, run.merge_ops);
  CHECK(imb.total > 0);
  CHECK(imb.on_diagonal == imb.total);
  CHECK(imb.max_over_mean >= 1.0);
  for (u64 r = 0; r < cfg.grid.size(); ++r) {
    if (cfg.grid.row_of(r) != cfg.grid.col_of(r)) {
      CHECK(run.merge_ops[r] == 0);
    }
  }
}

TEST_CASE("engine input contracts") {
  const EdgeList g = path3();
  CHECK_THROWS_AS(bfs_serial(g, 3), ContractError);
  Bfs1dConfig c1;
  c1.ranks = 0;
  CHECK_THROWS_AS(bfs_1d(g, 0, c1), ConfigError);
  c1.ranks = 1;
  CHECK_THROWS_AS(bfs_1d(g, 5, c1), ContractError);

  EdgeList directed;
  directed.n = 3;
  directed.directed = true;
  directed.edges = {{0, 1}};
  Bfs2dConfig c2;
  CHECK_THROWS_AS(bfs_2d(directed, 0, c2), ConfigError);
  CHECK_THROWS_AS(bfs_2d(g, 9, c2), ContractError);
}

TEST_CASE("parent-chain distance recomputation flags broken trees") {
  const EdgeList g = path3();
  const BfsOutput good = bfs_serial(g, 0);
  CHECK(distances_from_parents(good.parents, 0) == good.distances);

  std::vector<u64> cyc{0, 2, 1};  // 1 and 2 point at each other
  CHECK_THROWS_AS(distances_from_parents(cyc, 0), IntegrityError);

  std::vector<u64> dangling{0, 0, kNoParent};
  std::vector<u64> claimed{0, 2, kNoParent};  // 1's parent is unreached
  CHECK(distances_from_parents(dangling, 0)[2] == kInfDistance);
  CHECK_THROWS_AS(distances_from_parents(claimed, 0), IntegrityError);

  std::vector<u64> bad_root{1, 1, 1};
  CHECK_THROWS_AS(distances_from_parents(bad_root, 0), IntegrityError);
}

TEST_CASE("the validator notices each class of corruption") {
  EdgeList g = random_sym(40, 100, 9900);
  const u64 source = 4;
  const BfsOutput good = bfs_serial(g, source);
  REQUIRE(validate_bfs(g, good).empty());

  auto has_check = [](const std::vector<Violation>& vs, const char* name) {
    return std::any_of(vs.begin(), vs.end(),
                       [&](const Violation& v) { return v.check == name; });
  };

  // Pick a reached vertex away from the source with a safely corruptible
  // neighborhood.
  u64 victim = kNoParent;
  for (u64 v = 0; v < g.n; ++v) {
    if (v != source && good.distances[v] != kInfDistance && good.distances[v] >= 2) {
      victim = v;
      break;
    }
  }
  REQUIRE(victim != kNoParent);

  SUBCASE("parent replaced by a non-neighbor") {
    BfsOutput bad = good;
    const std::vector<std::set<u64>> adj = testutil::adjacency_sets(g);
    for (u64 cand = 0; cand < g.n; ++cand) {
      if (cand != victim && good.distances[cand] != kInfDistance &&
          adj[victim].count(cand) == 0) {
        bad.parents[victim] = cand;
        break;
      }
    }
    CHECK(has_check(validate_bfs(g, bad), "tree-edge"));
  }

  SUBCASE("distance off by one") {
    BfsOutput bad = good;
    bad.distances[victim] += 1;
    const std::vector<Violation> vs = validate_bfs(g, bad);
    CHECK(has_check(vs, "depth"));
  }

  SUBCASE("two vertices made each other's parent") {
    BfsOutput bad = good;
    const u64 p = good.parents[victim];
    bad.parents[p] = victim;
    CHECK_FALSE(validate_bfs(g, bad).empty());
  }

  SUBCASE("reached vertex erased from the tree") {
    BfsOutput bad = good;
    bad.distances[victim] = kInfDistance;
    bad.parents[victim] = kNoParent;
    const std::vector<Violation> vs = validate_bfs(g, bad);
    CHECK(has_check(vs, "span"));
  }
}

TEST_CASE("traversed-edge counting uses both endpoints") {
  EdgeList g;
  g.n = 5;
  g.directed = true;
  g.edges = {{0, 1}, {1, 2}, {3, 4}, {2, 2}};
  std::vector<u64> dist{0, 1, 2, kInfDistance, kInfDistance};
  CHECK(count_traversed_edges(g, dist) == 3);  // 0->1, 1->2, and the 2,2 loop
  std::vector<u64> none(5, kInfDistance);
  CHECK(count_traversed_edges(g, none) == 0);
}
