#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphwave/bfs_output.hpp"
#include "graphwave/cost_model.hpp"
#include "graphwave/edge_io.hpp"
#include "graphwave/machine_params.hpp"
#include "graphwave/proc_grid.hpp"
#include "graphwave/simulator.hpp"
#include "graphwave/spmsv.hpp"

namespace graphwave {

enum class Algorithm { Serial, OneD, TwoD, TwoDDiagonal };

const char* algorithm_name(Algorithm algo);
Algorithm algorithm_from_name(const std::string& name);

const char* spmsv_mode_name(SpmsvMode mode);
SpmsvMode spmsv_mode_from_name(const std::string& name);

/// One benchmark invocation: which engine, which graph, which knobs.
/// Exactly one of {generator parameters, input_path} supplies the graph.
struct RunConfig {
  Algorithm algorithm = Algorithm::Serial;

  // Generator side.
  u64 scale = 10;
  u64 edgefactor = 16;

  // Or a file instead.
  std::string input_path;
  EdgeFormat input_format = EdgeFormat::Text;

  u64 p = 1;          // ranks for 1d; grid size for 2d when grid not given
  ProcGrid grid{1, 1};
  bool grid_explicit = false;  // set when the caller picked p_r x p_c itself
  u64 threads = 1;
  SpmsvMode backend = SpmsvMode::Auto;

  u64 num_sources = 16;
  u64 seed = 1;
  /// A source must reach at least this fraction of the vertices or it is
  /// re-drawn; stands in for sampling inside the largest component.
  double min_reach_fraction = 0.25;
  u64 max_source_draws = 100;

  ExecMode mode = ExecMode::Concurrent;
  bool validate = true;      // run the full checker on every accepted run
  /// Keep per-source distance/parent arrays. The pipeline shuffles vertex
  /// ids before traversal, but emitted vectors and reported source ids are
  /// translated back to the input labeling.
  bool emit_vectors = false;

  std::optional<MachineParams> machine_params;

  void check() const;  // throws ConfigError on contradictory settings

  /// Grid the 2D engines will run on: the explicit one, or the closest
  /// factorization p_r x p_c of p with p_r <= p_c.
  ProcGrid resolved_grid() const;

  nlohmann::ordered_json to_json() const;
};

struct SourceRecord {
  u64 source = 0;
  u64 levels = 0;
  u64 reached = 0;
  u64 edges_traversed = 0;
  double elapsed_seconds = 0.0;

  double teps() const { return elapsed_seconds > 0.0 ? edges_traversed / elapsed_seconds : 0.0; }
};

struct ValidationSummary {
  u64 runs_checked = 0;
  u64 violations = 0;
  std::string first_violation;
};

/// Everything a run produces. Word counts, levels, and vertex counts are
/// exact and reproducible; only the *_seconds / TEPS numbers vary between
/// invocations. Communication ran on simulated ranks, hence `simulated`.
struct RunReport {
  RunConfig config;
  u64 n = 0;
  u64 directed_edges = 0;  // deduplicated directed input edges (TEPS base)
  u64 matrix_words = 0;    // nonzeros after symmetrize + dedup, loops dropped

  std::vector<SourceRecord> records;
  double mean_time_seconds = 0.0;
  double teps_mean = 0.0;
  double teps_harmonic = 0.0;

  CommStats comm;               // summed over the accepted runs
  std::vector<u64> merge_ops;   // per-rank totals over the accepted runs

  std::optional<CostBreakdown> cost;
  std::optional<ComparisonReport> cost_vs_measured;  // first accepted run

  ValidationSummary validation;
  bool simulated = true;

  /// Per-source outputs, kept only when config.emit_vectors is set.
  std::vector<BfsOutput> outputs;

  nlohmann::ordered_json to_json() const;
};

/// Generate or load, symmetrize, shuffle, then run num_sources accepted
/// traversals with the configured engine, validating and timing each.
/// Throws ConfigError when no acceptable source turns up within
/// max_source_draws attempts.
RunReport run_benchmark(const RunConfig& cfg);

}  // namespace graphwave
