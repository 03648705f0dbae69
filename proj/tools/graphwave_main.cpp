#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphwave/benchmark.hpp"
#include "graphwave/report.hpp"

namespace {

using namespace graphwave;

ProcGrid parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos || x == 0 || x + 1 == text.size()) {
    throw ConfigError("--grid expects RxC, e.g. 4x2");
  }
  try {
    const u64 rows = std::stoull(text.substr(0, x));
    const u64 cols = std::stoull(text.substr(x + 1));
    return {rows, cols};
  } catch (const std::exception&) {
    throw ConfigError("--grid expects two positive integers, e.g. 4x2");
  }
}

struct CommonOpts {
  std::string algo = "serial";
  u64 scale = 10;
  u64 edgefactor = 16;
  u64 threads = 1;
  std::string backend = "auto";
  u64 sources = 16;
  u64 seed = 1;
  double min_reach = 0.25;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--algo", opts.algo, "Algorithm: serial, 1d, 2d, or 2d-diag")
      ->capture_default_str();
  cmd->add_option("--scale", opts.scale, "Generate 2^scale vertices")->capture_default_str();
  cmd->add_option("--edgefactor", opts.edgefactor, "Edges per vertex for the generator")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Per-rank thread count (1d only)")
      ->capture_default_str();
  cmd->add_option("--backend", opts.backend, "Matrix kernel: spa, heap, or auto")
      ->capture_default_str();
  cmd->add_option("--sources", opts.sources, "Accepted BFS sources per run")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "Seed for generation, shuffling, and sources")
      ->capture_default_str();
  cmd->add_option("--min-reach", opts.min_reach,
                  "Reject sources reaching less than this fraction of vertices")
      ->capture_default_str();
}

RunConfig build_config(const CommonOpts& opts) {
  RunConfig cfg;
  cfg.algorithm = algorithm_from_name(opts.algo);
  cfg.scale = opts.scale;
  cfg.edgefactor = opts.edgefactor;
  cfg.threads = opts.threads;
  cfg.backend = spmsv_mode_from_name(opts.backend);
  cfg.num_sources = opts.sources;
  cfg.seed = opts.seed;
  cfg.min_reach_fraction = opts.min_reach;
  cfg.mode = exec_mode_from_env(ExecMode::Concurrent);
  return cfg;
}

int cmd_run(const RunConfig& cfg, const std::string& out_path, const std::string& out_format) {
  const RunReport report = run_benchmark(cfg);

  if (out_path.empty()) {
    if (out_format == "csv") {
      std::cout << report_to_csv(report);
    } else {
      std::cout << report.to_json().dump(2) << '\n';
    }
  } else {
    emit_report(report, out_path, report_format_from_name(out_format));
    std::cerr << "report written to " << out_path << '\n';
  }

  if (cfg.validate && report.validation.violations > 0) {
    std::cerr << "validation failed: " << report.validation.violations
              << " violation(s); first: " << report.validation.first_violation << '\n';
    return 2;
  }
  return 0;
}

int cmd_plot_data(const CommonOpts& opts, const std::vector<u64>& p_list,
                  const std::string& out_path) {
  std::vector<RunReport> reports;
  reports.reserve(p_list.size());
  for (const u64 p : p_list) {
    RunConfig cfg = build_config(opts);
    cfg.p = p;
    if (cfg.algorithm == Algorithm::Serial && p != 1) {
      throw ConfigError("serial runs only at p=1; pick 1d or 2d for a scaling sweep");
    }
    reports.push_back(run_benchmark(cfg));
    std::cerr << "p=" << p << " done: harmonic TEPS " << reports.back().teps_harmonic << '\n';
  }
  if (out_path.empty()) {
    std::cout << plot_data_csv(reports);
  } else {
    emit_plot_data(reports, out_path);
    std::cerr << "plot data written to " << out_path << '\n';
  }
  for (const RunReport& rep : reports) {
    if (rep.validation.violations > 0) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphwave: breadth-first search engines on a simulated process grid"};
  app.require_subcommand(1);

  // run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run the BFS benchmark and emit a report");
  CommonOpts run_opts;
  add_common(run, run_opts);
  u64 p = 1;
  std::string grid_text;
  auto* p_opt = run->add_option("--p", p, "Simulated rank count")->capture_default_str();
  auto* grid_opt =
      run->add_option("--grid", grid_text, "Explicit 2d grid as RxC (e.g. 4x2)");
  grid_opt->excludes(p_opt);
  std::string input_path;
  std::string input_format = "text";
  auto* input_opt =
      run->add_option("--input", input_path, "Edge-list file instead of the generator");
  run->add_option("--format", input_format, "Input file format: text or bin")
      ->needs(input_opt)
      ->capture_default_str();
  input_opt->excludes(run->get_option("--scale"));
  input_opt->excludes(run->get_option("--edgefactor"));
  std::string machine_params_path;
  run->add_option("--machine-params", machine_params_path,
                  "JSON cost-model parameters; adds model-vs-measured output");
  std::string out_path;
  std::string out_format = "json";
  run->add_option("--out", out_path, "Report file (stdout when omitted)");
  run->add_option("--out-format", out_format, "Report format: json or csv")
      ->capture_default_str();
  bool emit_vectors = false;
  run->add_flag("--emit-vectors", emit_vectors, "Include distance/parent arrays per source");
  bool validate = true;
  run->add_flag("--validate,!--no-validate", validate,
                "Check every accepted run against the full validator (default on)");

  // plot-data ----------------------------------------------------------
  auto* plot = app.add_subcommand(
      "plot-data", "Run a process-count sweep and emit a TEPS/word-count series");
  CommonOpts plot_opts;
  plot_opts.algo = "1d";
  add_common(plot, plot_opts);
  std::vector<u64> p_list{1, 4};
  plot->add_option("--p-list", p_list, "Rank counts to sweep")
      ->delimiter(',')
      ->capture_default_str();
  std::string plot_out;
  plot->add_option("--out", plot_out, "Series file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      RunConfig cfg = build_config(run_opts);
      if (!grid_text.empty()) {
        cfg.grid = parse_grid(grid_text);
        cfg.grid_explicit = true;
        cfg.p = cfg.grid.size();
      } else {
        cfg.p = p;
      }
      cfg.input_path = input_path;
      if (input_format == "bin") {
        cfg.input_format = EdgeFormat::Binary;
      } else if (input_format == "text") {
        cfg.input_format = EdgeFormat::Text;
      } else {
        throw ConfigError("unknown input format '" + input_format + "'");
      }
      cfg.emit_vectors = emit_vectors;
      cfg.validate = validate;
      if (!machine_params_path.empty()) {
        cfg.machine_params = load_machine_params(machine_params_path);
      }
      return cmd_run(cfg, out_path, out_format);
    }
    return cmd_plot_data(plot_opts, p_list, plot_out);
  } catch (const graphwave::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
}
