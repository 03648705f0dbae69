#include "graphwave/comm_stats.hpp"

namespace graphwave {

const char* phase_name(Phase phase) {
  switch (phase) {
    case Phase::Alltoall:
      return "alltoall";
    case Phase::Allgather:
      return "allgather";
    case Phase::Transpose:
      return "transpose";
    case Phase::Allreduce:
      return "allreduce";
  }
  return "?";
}

u64 CommStats::total_network_words() const {
  u64 sum = 0;
  for (const PhaseCounters& pc : total) {
    sum += pc.words_recv;
  }
  return sum;
}

CommStats& CommStats::operator+=(const CommStats& other) {
  if (p_r != other.p_r || p_c != other.p_c) {
    throw ContractError("CommStats: cannot combine runs from different grids");
  }
  for (unsigned ph = 0; ph < kPhaseCount; ++ph) {
    total[ph] += other.total[ph];
  }
  per_rank.resize(std::max(per_rank.size(), other.per_rank.size()));
  for (std::size_t r = 0; r < other.per_rank.size(); ++r) {
    for (unsigned ph = 0; ph < kPhaseCount; ++ph) {
      per_rank[r][ph] += other.per_rank[r][ph];
    }
  }
  per_level.resize(std::max(per_level.size(), other.per_level.size()));
  for (std::size_t lvl = 0; lvl < other.per_level.size(); ++lvl) {
    for (unsigned ph = 0; ph < kPhaseCount; ++ph) {
      per_level[lvl][ph] += other.per_level[lvl][ph];
    }
  }
  return *this;
}

namespace {

nlohmann::ordered_json counters_json(const PhaseCounters& pc) {
  return nlohmann::ordered_json{{"words", pc.words_recv},
                                {"words_sent", pc.words_sent},
                                {"self_words", pc.self_words},
                                {"input_words", pc.input_words},
                                {"messages", pc.messages}};
}

nlohmann::ordered_json phases_json(const PhaseArray& arr) {
  nlohmann::ordered_json out;
  for (unsigned ph = 0; ph < kPhaseCount; ++ph) {
    out[phase_name(static_cast<Phase>(ph))] = counters_json(arr[ph]);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json CommStats::to_json() const {
  nlohmann::ordered_json out = phases_json(total);
  out["grid"] = {{"p_r", p_r}, {"p_c", p_c}};
  auto levels = nlohmann::ordered_json::array();
  for (std::size_t lvl = 0; lvl < per_level.size(); ++lvl) {
    nlohmann::ordered_json row = phases_json(per_level[lvl]);
    row["level"] = lvl;
    levels.push_back(std::move(row));
  }
  out["per_level"] = std::move(levels);
  auto ranks = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < per_rank.size(); ++r) {
    nlohmann::ordered_json row = phases_json(per_rank[r]);
    row["rank"] = r;
    ranks.push_back(std::move(row));
  }
  out["per_rank"] = std::move(ranks);
  return out;
}

}  // namespace graphwave
