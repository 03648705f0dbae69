#pragma once

#include <condition_variable>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <type_traits>
#include <utility>

#include "graphwave/comm_stats.hpp"
#include "graphwave/proc_grid.hpp"

namespace graphwave {

/// Concurrent: one worker per rank, free-running between collectives.
/// Sequential: the same workers, but a baton serializes them round-robin so
/// only one rank ever executes at a time (debugging mode). Either way,
/// collective data movement and all counters are identical.
enum class ExecMode { Concurrent, Sequential };

/// ExecMode override via GRAPHWAVE_SEQ=1.
ExecMode exec_mode_from_env(ExecMode fallback);

enum class ReduceOp { Sum, Max, Or };

class SimRuntime;

/// Per-rank handle passed to rank programs. All collectives block until the
/// whole group arrives; buffers are vectors of 64-bit words. Groups are
/// ascending rank lists that must include the caller. `site` labels the
/// call in protocol-error reports; all ranks of a group must reach the same
/// site with the same collective kind or the run fails with ProtocolError.
class RankCtx {
 public:
  u64 rank() const { return rank_; }
  const ProcGrid& grid() const;

  /// Attribute subsequent collectives to this BFS level.
  void set_level(u64 level);

  /// Personalized exchange: send[k] goes to group[k]; result[k] arrived
  /// from group[k]. send.size() must equal group.size().
  std::vector<std::vector<u64>> alltoallv(const std::vector<u64>& group,
                                          std::vector<std::vector<u64>> send, const char* site);

  /// Every member receives all contributions concatenated in ascending
  /// rank order.
  std::vector<u64> allgatherv(const std::vector<u64>& group, std::vector<u64> local,
                              const char* site);

  /// Reduce one word over the group; everyone gets the result. Or treats
  /// words as booleans (nonzero = true).
  u64 allreduce(const std::vector<u64>& group, u64 value, ReduceOp op, const char* site);

  /// Two-rank exchange with `partner`, charged to the transpose phase.
  /// partner == rank() keeps the payload local (self words only).
  std::vector<u64> pairwise_exchange(u64 partner, std::vector<u64> payload, const char* site);

  /// alltoallv charged to the transpose phase (the general redistribution
  /// path for rectangular grids).
  std::vector<std::vector<u64>> transpose_exchange(const std::vector<u64>& group,
                                                   std::vector<std::vector<u64>> send,
                                                   const char* site);

  /// Built by run_ranks(); rank programs only ever receive one by reference.
  RankCtx(SimRuntime* runtime, u64 rank) : runtime_(runtime), rank_(rank) {}

 private:
  SimRuntime* runtime_;
  u64 rank_;
};

/// Shared state behind a run_ranks() call: rendezvous table, scheduler for
/// the sequential baton, deadlock/protocol detection, and the CommStats
/// under construction. Rank programs never touch it directly.
class SimRuntime {
 public:
  SimRuntime(const ProcGrid& grid, ExecMode mode);
  ~SimRuntime();

  SimRuntime(const SimRuntime&) = delete;
  SimRuntime& operator=(const SimRuntime&) = delete;

  const ProcGrid& grid() const { return grid_; }

  /// Blocks until this rank may start executing (sequential baton).
  void begin_rank(u64 rank);
  /// Marks the rank finished; fails collectives still awaiting it.
  void finish_rank(u64 rank, std::exception_ptr error);
  /// After all workers joined: rethrows the first non-protocol rank error
  /// (protocol failures are usually fallout of one), else reports the first
  /// detected protocol violation; otherwise returns the stats.
  CommStats take_stats();

  void set_level(u64 rank, u64 level);
  std::vector<std::vector<u64>> exchange(u64 rank, const std::vector<u64>& group,
                                         std::vector<std::vector<u64>> send, Phase phase,
                                         const char* site);
  std::vector<u64> gather(u64 rank, const std::vector<u64>& group, std::vector<u64> local,
                          const char* site);
  u64 reduce(u64 rank, const std::vector<u64>& group, u64 value, ReduceOp op, const char* site);

 private:
  struct Rendezvous;
  enum class RankState { Ready, Blocked, Done };

  void check_group(u64 rank, const std::vector<u64>& group, const char* site);
  std::shared_ptr<Rendezvous> join_rendezvous(std::unique_lock<std::mutex>& lock, u64 rank,
                                              const std::vector<u64>& group, unsigned kind,
                                              Phase phase, ReduceOp op, const char* site);
  void complete(Rendezvous& rv);
  void fail(Rendezvous& rv, const std::string& message);
  void wait_member(std::unique_lock<std::mutex>& lock, u64 rank, Rendezvous& rv);
  void pass_baton(u64 from);
  void check_global_deadlock();
  void charge(const Rendezvous& rv);

  ProcGrid grid_;
  ExecMode mode_;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::vector<RankState> states_;
  std::vector<u64> levels_;
  std::vector<std::exception_ptr> rank_errors_;
  std::string protocol_error_;
  std::map<std::vector<u64>, std::shared_ptr<Rendezvous>> pending_;
  u64 baton_ = 0;
  CommStats stats_;
};

/// Run one program on every rank of the grid and collect the per-rank
/// results plus the exact communication accounting. Results depend only on
/// program logic and collective contents, so they are identical under both
/// execution modes and any thread interleaving.
template <class F>
auto run_ranks(const ProcGrid& grid, ExecMode mode, F&& program)
    -> std::pair<std::vector<std::invoke_result_t<F&, RankCtx&>>, CommStats> {
  using Result = std::invoke_result_t<F&, RankCtx&>;
  SimRuntime runtime(grid, mode);
  std::vector<Result> results(grid.size());
  std::vector<std::thread> workers;
  workers.reserve(grid.size());
  for (u64 r = 0; r < grid.size(); ++r) {
    workers.emplace_back([&runtime, &results, &program, r] {
      RankCtx ctx(&runtime, r);
      std::exception_ptr error;
      try {
        runtime.begin_rank(r);
        results[r] = program(ctx);
      } catch (...) {
        error = std::current_exception();
      }
      runtime.finish_rank(r, error);
    });
  }
  for (std::thread& worker : workers) {
    worker.join();
  }
  CommStats stats = runtime.take_stats();
  return {std::move(results), std::move(stats)};
}

}  // namespace graphwave
