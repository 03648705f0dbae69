#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphwave/comm_stats.hpp"
#include "graphwave/machine_params.hpp"

namespace graphwave {

/// Analytic per-node cost of one BFS traversal, split the way the formulas
/// are: local memory terms plus per-phase network latency/bandwidth terms.
/// Costs are unitless unless the MachineParams were calibrated.
struct CostBreakdown {
  std::string model;  // "1d" or "2d"

  // Inputs echoed back.
  u64 n = 0;
  u64 m = 0;
  u64 p = 1;
  u64 p_r = 1;
  u64 p_c = 1;
  u64 t = 1;
  // Processes the model actually evaluates with. Threading coarsens the 1D
  // grid: t-way threading on p ranks behaves like p/t fatter processes, each
  // holding t times the vertices. Real-valued when t does not divide p.
  double p_effective = 1.0;

  // Local memory references: edge scan, frontier/distance lookups, adjacency
  // walk. The alpha terms depend on the working-set size each access touches.
  double local_edge_scan = 0.0;
  double local_frontier_access = 0.0;
  double local_adjacency_access = 0.0;
  double local_mem = 0.0;

  // 1D frontier exchange (all-to-all over all processes).
  double a2a_latency = 0.0;
  double a2a_bandwidth = 0.0;
  // 2D expand (allgather over a processor column).
  double expand_latency = 0.0;
  double expand_bandwidth = 0.0;
  // 2D fold (all-to-all over a processor row). The formula is an upper
  // bound: merging at the sender can only shrink the actual volume.
  double fold_latency = 0.0;
  double fold_bandwidth = 0.0;
  bool fold_is_bound = false;

  double comm_latency = 0.0;
  double comm_bandwidth = 0.0;

  double total() const { return local_mem + comm_latency + comm_bandwidth; }

  nlohmann::ordered_json to_json() const;
};

/// Cost of a 1D vertex-partitioned BFS on p ranks with t-way threading.
CostBreakdown cost_1d(u64 n, u64 m, u64 p, u64 t, const MachineParams& mp);

/// Cost of a 2D checkerboard BFS on a p_r x p_c grid.
CostBreakdown cost_2d(u64 n, u64 m, u64 p_r, u64 p_c, const MachineParams& mp);

/// One model term lined up against the matching instrumented counters.
/// Word counts are per modeled process; ratios are measured/model with 0/0
/// defined as 1. `model_words` is the bandwidth multiplier from the cost
/// formula (zero when the phase predicts no network traffic) and pairs with
/// words that crossed the network; `bound_words` is the formula's volume
/// bound per process, which holds for the full input volume regardless of
/// grid degeneration.
struct PhaseComparison {
  std::string label;
  Phase phase = Phase::Alltoall;
  double model_words = 0.0;
  double model_messages = 0.0;
  double measured_net_words = 0.0;  // mean network words per modeled process
  double measured_messages = 0.0;   // mean messages per modeled process
  double word_ratio = 1.0;
  double message_ratio = 1.0;
  double bound_words = 0.0;         // per-process volume bound
  double max_per_rank_words = 0.0;  // largest per-rank volume observed
  bool within_bound = true;         // max_per_rank_words <= bound_words
  bool extension = false;           // not part of the published formulas
};

struct ComparisonReport {
  std::string model;
  u64 n = 0;
  u64 m = 0;
  u64 p_r = 1;
  u64 p_c = 1;
  std::vector<PhaseComparison> rows;
  // Transpose estimate built from the point-to-point bandwidth term; the
  // published formulas do not model this phase.
  bool has_transpose_estimate = false;
  double transpose_cost_estimate = 0.0;

  nlohmann::ordered_json to_json() const;
};

/// Line up a cost breakdown against the counters of an instrumented run on
/// the same grid. Bandwidth terms pair with word counters, latency terms
/// with message counts. Throws ConfigError when the grids disagree.
ComparisonReport compare_model_vs_measured(const CostBreakdown& cb, const CommStats& stats,
                                           const MachineParams& mp);

}  // namespace graphwave
