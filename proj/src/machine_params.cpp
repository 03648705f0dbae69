#include "graphwave/machine_params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace graphwave {

double AlphaStep::value(double working_set) const {
  for (const auto& [size, cost] : steps) {
    if (working_set <= size) return cost;
  }
  return steps.back().second;
}

void AlphaStep::validate() const {
  if (steps.empty()) throw ConfigError("alpha_L needs at least one [size, value] step");
  double prev_size = -1.0;
  double prev_value = 0.0;
  for (const auto& [size, cost] : steps) {
    if (!(size >= 0.0) || !(cost >= 0.0)) {
      throw ConfigError("alpha_L sizes and values must be nonnegative");
    }
    if (size <= prev_size) throw ConfigError("alpha_L breakpoint sizes must be increasing");
    if (cost < prev_value) {
      throw ConfigError("alpha_L must be nondecreasing: larger working sets cannot be cheaper");
    }
    prev_size = size;
    prev_value = cost;
  }
}

const char* beta_kind_name(BetaKind kind) {
  switch (kind) {
    case BetaKind::Constant: return "constant";
    case BetaKind::Torus: return "torus";
    case BetaKind::Ring: return "ring";
  }
  return "?";
}

BetaKind beta_kind_from_name(const std::string& name) {
  if (name == "constant") return BetaKind::Constant;
  if (name == "torus") return BetaKind::Torus;
  if (name == "ring") return BetaKind::Ring;
  throw ConfigError("unknown beta_N kind '" + name + "' (expected constant, torus, or ring)");
}

double BetaFn::value(double participants) const {
  if (participants <= 1.0) return 0.0;
  switch (kind) {
    case BetaKind::Constant: return coefficient;
    case BetaKind::Torus: return coefficient * std::cbrt(participants);
    case BetaKind::Ring: return coefficient * participants;
  }
  return 0.0;
}

MachineParams MachineParams::unit() {
  MachineParams mp;
  mp.alpha_l.steps = {{0.0, 1.0}};
  mp.beta_l = 1.0;
  mp.alpha_n = 1.0;
  mp.beta_a2a = {BetaKind::Constant, 1.0};
  mp.beta_ag = {BetaKind::Constant, 1.0};
  mp.beta_p2p = 1.0;
  return mp;
}

void MachineParams::validate() const {
  alpha_l.validate();
  if (!(beta_l >= 0.0)) throw ConfigError("beta_L must be nonnegative");
  if (!(alpha_n >= 0.0)) throw ConfigError("alpha_N must be nonnegative");
  if (!(beta_a2a.coefficient >= 0.0)) throw ConfigError("beta_N coefficient must be nonnegative");
  if (!(beta_ag.coefficient >= 0.0)) throw ConfigError("beta_N_ag coefficient must be nonnegative");
  if (!(beta_p2p >= 0.0)) throw ConfigError("beta_N_p2p must be nonnegative");
}

namespace {

BetaFn beta_from_json(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("coefficient")) {
    throw ConfigError(std::string(key) + " must be an object {kind, coefficient}");
  }
  BetaFn fn;
  fn.kind = beta_kind_from_name(j.at("kind").get<std::string>());
  fn.coefficient = j.at("coefficient").get<double>();
  return fn;
}

}  // namespace

MachineParams MachineParams::from_json(const nlohmann::json& j) {
  MachineParams mp;
  try {
    const auto& alpha = j.at("alpha_L");
    if (!alpha.is_array() || alpha.empty()) {
      throw ConfigError("alpha_L must be a nonempty array of [size, value] pairs");
    }
    for (const auto& entry : alpha) {
      if (!entry.is_array() || entry.size() != 2) {
        throw ConfigError("alpha_L entries must be [size, value] pairs");
      }
      mp.alpha_l.steps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    mp.beta_l = j.at("beta_L").get<double>();
    mp.alpha_n = j.at("alpha_N").get<double>();
    mp.beta_a2a = beta_from_json(j.at("beta_N"), "beta_N");
    // The allgather curve defaults to the all-to-all one; a separate network
    // profile can be supplied when the machine treats the two differently.
    mp.beta_ag = j.contains("beta_N_ag") ? beta_from_json(j.at("beta_N_ag"), "beta_N_ag")
                                         : mp.beta_a2a;
    mp.beta_p2p = j.contains("beta_N_p2p") ? j.at("beta_N_p2p").get<double>() : 0.0;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad machine-params config: ") + e.what());
  }
  mp.validate();
  return mp;
}

nlohmann::ordered_json MachineParams::to_json() const {
  nlohmann::ordered_json j;
  auto& alpha = j["alpha_L"] = nlohmann::ordered_json::array();
  for (const auto& [size, cost] : alpha_l.steps) {
    alpha.push_back({size, cost});
  }
  j["beta_L"] = beta_l;
  j["alpha_N"] = alpha_n;
  j["beta_N"] = {{"kind", beta_kind_name(beta_a2a.kind)}, {"coefficient", beta_a2a.coefficient}};
  j["beta_N_ag"] = {{"kind", beta_kind_name(beta_ag.kind)}, {"coefficient", beta_ag.coefficient}};
  j["beta_N_p2p"] = beta_p2p;
  return j;
}

MachineParams load_machine_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open machine-params file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("machine-params file " + path + " is not valid JSON: " + e.what());
  }
  return MachineParams::from_json(j);
}

}  // namespace graphwave
