#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "graphwave/common.hpp"

namespace graphwave {

/// Communication phases the instrumented collectives are charged to.
enum class Phase : unsigned { Alltoall = 0, Allgather = 1, Transpose = 2, Allreduce = 3 };
constexpr unsigned kPhaseCount = 4;

const char* phase_name(Phase phase);

/// One phase's counters. A "word" is one 64-bit payload value.
///   words_sent / words_recv  network traffic (destination != source)
///   self_words               payload kept on-rank at a collective
///   input_words              every payload word once, at its source,
///                            whether or not it crossed the network
///   messages                 non-empty point-to-point transfers originated
struct PhaseCounters {
  u64 words_sent = 0;
  u64 words_recv = 0;
  u64 self_words = 0;
  u64 input_words = 0;
  u64 messages = 0;

  PhaseCounters& operator+=(const PhaseCounters& other) {
    words_sent += other.words_sent;
    words_recv += other.words_recv;
    self_words += other.self_words;
    input_words += other.input_words;
    messages += other.messages;
    return *this;
  }
  bool operator==(const PhaseCounters& other) const = default;
};

using PhaseArray = std::array<PhaseCounters, kPhaseCount>;

/// Exact word/message accounting of one simulated run: per-rank totals and
/// per-BFS-level aggregates, plus the grand totals. Collectives attribute a
/// member's contribution to that member's current level (set by the engine).
struct CommStats {
  u64 p_r = 1;
  u64 p_c = 1;
  PhaseArray total{};
  std::vector<PhaseArray> per_rank;
  std::vector<PhaseArray> per_level;

  u64 p() const { return p_r * p_c; }

  const PhaseCounters& phase(Phase ph) const { return total[static_cast<unsigned>(ph)]; }

  /// Network words of a phase (received view; equals sent by conservation).
  u64 words(Phase ph) const { return phase(ph).words_recv; }
  u64 total_network_words() const;

  /// Sum another run's counters into this one (same grid; levels padded).
  CommStats& operator+=(const CommStats& other);
  bool operator==(const CommStats& other) const = default;

  nlohmann::ordered_json to_json() const;
};

}  // namespace graphwave
