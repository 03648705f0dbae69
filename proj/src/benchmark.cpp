#include "graphwave/benchmark.hpp"

#include <chrono>
#include <cmath>

#include "graphwave/bfs_1d.hpp"
#include "graphwave/bfs_2d.hpp"
#include "graphwave/bfs_serial.hpp"
#include "graphwave/rmat.hpp"
#include "graphwave/rng.hpp"
#include "graphwave/shuffle.hpp"
#include "graphwave/validate.hpp"

namespace graphwave {

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Serial: return "serial";
    case Algorithm::OneD: return "1d";
    case Algorithm::TwoD: return "2d";
    case Algorithm::TwoDDiagonal: return "2d-diag";
  }
  return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "serial") return Algorithm::Serial;
  if (name == "1d") return Algorithm::OneD;
  if (name == "2d") return Algorithm::TwoD;
  if (name == "2d-diag" || name == "2d-diagonal") return Algorithm::TwoDDiagonal;
  throw ConfigError("unknown algorithm '" + name + "' (expected serial, 1d, 2d, or 2d-diag)");
}

const char* spmsv_mode_name(SpmsvMode mode) {
  switch (mode) {
    case SpmsvMode::Spa: return "spa";
    case SpmsvMode::Heap: return "heap";
    case SpmsvMode::Auto: return "auto";
  }
  return "?";
}

SpmsvMode spmsv_mode_from_name(const std::string& name) {
  if (name == "spa") return SpmsvMode::Spa;
  if (name == "heap") return SpmsvMode::Heap;
  if (name == "auto") return SpmsvMode::Auto;
  throw ConfigError("unknown backend '" + name + "' (expected spa, heap, or auto)");
}

void RunConfig::check() const {
  if (num_sources < 1) throw ConfigError("num_sources must be at least 1");
  if (p < 1) throw ConfigError("p must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (!(min_reach_fraction >= 0.0) || min_reach_fraction > 1.0) {
    throw ConfigError("min reach fraction must lie in [0, 1]");
  }
  if (max_source_draws < 1) throw ConfigError("source draw budget must be at least 1");
  if (input_path.empty()) {
    if (scale < 1 || scale > 40) throw ConfigError("scale must lie in [1, 40]");
    if (edgefactor < 1) throw ConfigError("edgefactor must be at least 1");
  }
  const bool two_d = algorithm == Algorithm::TwoD || algorithm == Algorithm::TwoDDiagonal;
  if (grid_explicit && !two_d) {
    throw ConfigError("--grid applies to the 2d algorithms; use --p for " +
                      std::string(algorithm_name(algorithm)));
  }
  if (grid_explicit && grid.size() != p) {
    throw ConfigError("grid size disagrees with p");
  }
  if (algorithm == Algorithm::Serial && p != 1) {
    throw ConfigError("the serial algorithm runs on one rank; drop --p");
  }
  if (threads > 1 && algorithm != Algorithm::OneD) {
    throw ConfigError("--threads applies to the 1d algorithm only");
  }
  if (algorithm == Algorithm::TwoDDiagonal) {
    const ProcGrid g = resolved_grid();
    if (g.p_r != g.p_c) throw ConfigError("the diagonal distribution needs a square grid");
  }
}

ProcGrid RunConfig::resolved_grid() const {
  if (grid_explicit) return grid;
  u64 best = 1;
  for (u64 d = 1; d * d <= p; ++d) {
    if (p % d == 0) best = d;
  }
  return {best, p / best};
}

nlohmann::ordered_json RunConfig::to_json() const {
  // Execution mode (sequential vs concurrent simulation) is deliberately
  // not echoed: it cannot change any result, so it is not part of a run's
  // identity.
  nlohmann::ordered_json j;
  j["algorithm"] = algorithm_name(algorithm);
  if (input_path.empty()) {
    j["scale"] = scale;
    j["edgefactor"] = edgefactor;
  } else {
    j["input"] = input_path;
    j["input_format"] = input_format == EdgeFormat::Text ? "text" : "bin";
  }
  j["p"] = p;
  if (algorithm == Algorithm::TwoD || algorithm == Algorithm::TwoDDiagonal) {
    const ProcGrid g = resolved_grid();
    j["grid"] = {{"p_r", g.p_r}, {"p_c", g.p_c}};
  }
  j["threads"] = threads;
  if (algorithm == Algorithm::TwoD || algorithm == Algorithm::TwoDDiagonal) {
    j["backend"] = spmsv_mode_name(backend);
  }
  j["num_sources"] = num_sources;
  j["seed"] = seed;
  j["min_reach_fraction"] = min_reach_fraction;
  j["validate"] = validate;
  return j;
}

namespace {

constexpr u64 kShuffleStream = 0x5346554646ull;  // distinct from generator streams
constexpr u64 kSourceStream = 0x534f55524345ull;

BfsRun run_engine(const RunConfig& cfg, const EdgeList& g, u64 source) {
  switch (cfg.algorithm) {
    case Algorithm::Serial: {
      BfsRun run;
      run.output = bfs_serial(g, source);
      run.stats.p_r = 1;
      run.stats.p_c = 1;
      run.stats.per_rank.assign(1, PhaseArray{});
      return run;
    }
    case Algorithm::OneD: {
      Bfs1dConfig ec;
      ec.ranks = cfg.p;
      ec.threads = cfg.threads;
      ec.mode = cfg.mode;
      return bfs_1d(g, source, ec);
    }
    case Algorithm::TwoD:
    case Algorithm::TwoDDiagonal: {
      Bfs2dConfig ec;
      ec.grid = cfg.resolved_grid();
      ec.diagonal = cfg.algorithm == Algorithm::TwoDDiagonal;
      ec.backend = cfg.backend;
      ec.mode = cfg.mode;
      return bfs_2d(g, source, ec);
    }
  }
  throw ContractError("run_engine: unhandled algorithm");
}

/// Engines traverse the shuffled copy of the graph; anything the report
/// exposes per vertex has to speak the caller's labels instead.
BfsOutput to_input_ids(const BfsOutput& shuffled, const Permutation& perm) {
  BfsOutput out;
  out.n = shuffled.n;
  out.source = perm.inverse[shuffled.source];
  out.levels = shuffled.levels;
  out.reached = shuffled.reached;
  out.edges_traversed = shuffled.edges_traversed;
  out.distances.resize(shuffled.n);
  out.parents.resize(shuffled.n);
  for (u64 v = 0; v < shuffled.n; ++v) {
    const u64 s = perm.forward[v];
    out.distances[v] = shuffled.distances[s];
    const u64 p = shuffled.parents[s];
    out.parents[v] = p == kNoParent ? kNoParent : perm.inverse[p];
  }
  return out;
}

}  // namespace

RunReport run_benchmark(const RunConfig& cfg) {
  cfg.check();

  EdgeList base;
  if (cfg.input_path.empty()) {
    RmatParams params;
    params.scale = cfg.scale;
    params.edgefactor = cfg.edgefactor;
    base = rmat_generate(params, cfg.seed);
  } else {
    base = load_edge_list(cfg.input_path, cfg.input_format);
  }
  if (base.n == 0) throw ConfigError("benchmark graph has no vertices");

  RunReport report;
  report.config = cfg;
  report.n = base.n;

  const std::vector<Edge> directed = dedup_edges(base.edges);
  report.directed_edges = directed.size();

  const EdgeList sym = symmetrize(base);
  const Permutation perm =
      random_permutation(sym.n, stream_for(cfg.seed, kShuffleStream).next());
  const EdgeList graph = apply_permutation(sym, perm);

  EdgeList traversal_base;  // deduplicated directed edges, in shuffled ids
  traversal_base.n = base.n;
  traversal_base.edges = directed;
  traversal_base = apply_permutation(traversal_base, perm);

  for (const auto& [u, v] : graph.edges) {
    if (u != v) ++report.matrix_words;
  }

  SplitMix64 source_rng = stream_for(cfg.seed, kSourceStream);
  u64 draws = 0;
  const u64 needed = cfg.num_sources;
  CommStats first_stats;

  while (report.records.size() < needed) {
    if (draws >= cfg.max_source_draws) {
      throw ConfigError("gave up after " + std::to_string(draws) +
                        " source draws: no vertex reaches " +
                        std::to_string(cfg.min_reach_fraction * 100.0) +
                        "% of the graph, so the largest component is too small");
    }
    const u64 source = source_rng.next_below(graph.n);
    ++draws;

    const auto t0 = std::chrono::steady_clock::now();
    BfsRun run = run_engine(cfg, graph, source);
    const auto t1 = std::chrono::steady_clock::now();

    const double reached = static_cast<double>(run.output.reached);
    if (reached < cfg.min_reach_fraction * static_cast<double>(graph.n)) {
      continue;  // outside the big component; redraw
    }

    run.output.edges_traversed = count_traversed_edges(traversal_base, run.output.distances);

    SourceRecord rec;
    rec.source = perm.inverse[source];
    rec.levels = run.output.levels;
    rec.reached = run.output.reached;
    rec.edges_traversed = run.output.edges_traversed;
    rec.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.records.push_back(rec);

    if (cfg.validate) {
      report.validation.runs_checked++;
      const std::vector<Violation> violations = validate_bfs(graph, run.output);
      if (!violations.empty() && report.validation.violations == 0) {
        report.validation.first_violation = violations[0].check + ": " + violations[0].detail;
      }
      report.validation.violations += violations.size();
    }

    if (report.records.size() == 1) {
      report.comm = run.stats;
      report.merge_ops = run.merge_ops;
      first_stats = run.stats;
    } else {
      report.comm += run.stats;
      for (size_t r = 0; r < run.merge_ops.size(); ++r) report.merge_ops[r] += run.merge_ops[r];
    }
    if (cfg.emit_vectors) report.outputs.push_back(to_input_ids(run.output, perm));
  }

  const double k = static_cast<double>(report.records.size());
  double time_sum = 0.0;
  double teps_sum = 0.0;
  double inv_teps_sum = 0.0;
  bool teps_defined = true;
  for (const SourceRecord& rec : report.records) {
    time_sum += rec.elapsed_seconds;
    const double teps = rec.teps();
    teps_sum += teps;
    if (teps > 0.0) {
      inv_teps_sum += 1.0 / teps;
    } else {
      teps_defined = false;
    }
  }
  report.mean_time_seconds = time_sum / k;
  report.teps_mean = teps_sum / k;
  report.teps_harmonic = teps_defined && inv_teps_sum > 0.0 ? k / inv_teps_sum : 0.0;

  if (cfg.machine_params) {
    const MachineParams& mp = *cfg.machine_params;
    if (cfg.algorithm == Algorithm::OneD || cfg.algorithm == Algorithm::Serial) {
      report.cost = cost_1d(report.n, report.matrix_words, cfg.p, cfg.threads, mp);
    } else {
      const ProcGrid g = cfg.resolved_grid();
      report.cost = cost_2d(report.n, report.matrix_words, g.p_r, g.p_c, mp);
    }
    report.cost_vs_measured = compare_model_vs_measured(*report.cost, first_stats, mp);
  }
  return report;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["simulated"] = simulated;
  j["config"] = config.to_json();
  j["graph"] = {{"n", n},
                {"directed_edges", directed_edges},
                {"matrix_words", matrix_words}};

  auto& sources = j["sources"] = nlohmann::ordered_json::array();
  for (size_t i = 0; i < records.size(); ++i) {
    const SourceRecord& rec = records[i];
    nlohmann::ordered_json r;
    r["source"] = rec.source;
    r["levels"] = rec.levels;
    r["reached"] = rec.reached;
    r["edges_traversed"] = rec.edges_traversed;
    r["elapsed_seconds"] = rec.elapsed_seconds;
    r["teps"] = rec.teps();
    if (config.emit_vectors && i < outputs.size()) {
      const nlohmann::ordered_json vecs = outputs[i].to_json(true);
      r["distances"] = vecs.at("distances");
      r["parents"] = vecs.at("parents");
    }
    sources.push_back(std::move(r));
  }

  j["aggregate"] = {{"mean_time_seconds", mean_time_seconds},
                    {"teps_mean", teps_mean},
                    {"teps_harmonic", teps_harmonic}};
  j["comm"] = comm.to_json();
  if (!merge_ops.empty()) j["merge_ops"] = merge_ops;
  if (cost) j["cost_model"] = cost->to_json();
  if (cost_vs_measured) j["cost_vs_measured"] = cost_vs_measured->to_json();
  if (validation.runs_checked > 0) {
    nlohmann::ordered_json v;
    v["runs_checked"] = validation.runs_checked;
    v["violations"] = validation.violations;
    if (!validation.first_violation.empty()) v["first_violation"] = validation.first_violation;
    j["validation"] = std::move(v);
  }
  return j;
}

}  // namespace graphwave
