#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphwave/common.hpp"

namespace graphwave {

/// Nondecreasing step function modelling per-access latency as a function of
/// working-set size (words). Each breakpoint [size, value] gives the cost for
/// working sets up to that size; anything beyond the last breakpoint pays the
/// last value. Breakpoints typically follow cache capacities.
struct AlphaStep {
  std::vector<std::pair<double, double>> steps;

  double value(double working_set) const;
  void validate() const;
};

enum class BetaKind { Constant, Torus, Ring };

const char* beta_kind_name(BetaKind kind);
BetaKind beta_kind_from_name(const std::string& name);

/// Per-word inverse bandwidth as a function of participant count.
/// Constant ignores the count; Torus scales by p^(1/3) (bisection limit of a
/// 3D torus); Ring scales by p (no parallel speedup). A collective over a
/// single participant moves nothing, so value(1) is always 0.
struct BetaFn {
  BetaKind kind = BetaKind::Constant;
  double coefficient = 0.0;

  double value(double participants) const;
};

/// Calibration constants for the analytic cost model. "Local" terms describe
/// memory accesses on one node; "network" terms describe collectives.
struct MachineParams {
  AlphaStep alpha_l;   // local access latency by working-set size
  double beta_l = 0.0; // local per-word transfer cost
  double alpha_n = 0.0;  // network per-message latency
  BetaFn beta_a2a;     // all-to-all per-word cost vs participant count
  BetaFn beta_ag;      // allgather counterpart
  double beta_p2p = 0.0; // point-to-point per-word cost (transpose estimate only)

  /// All-ones parameters; handy for reading formula structure off results.
  static MachineParams unit();

  void validate() const;

  static MachineParams from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

MachineParams load_machine_params(const std::string& path);

}  // namespace graphwave
