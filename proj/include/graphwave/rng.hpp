#pragma once

#include "graphwave/common.hpp"

namespace graphwave {

/// splitmix64 finalizer (Steele, Lea, Flood; public domain reference code).
/// Used both as a standalone mixer and as the step function of the
/// counter-based streams below. Fixed algorithm, so identical seeds give
/// identical output on every platform.
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Minimal splitmix64 generator.
struct SplitMix64 {
  u64 state = 0;

  u64 next() {
    state += 0x9e3779b97f4a7c15ull;
    u64 x = state;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits; exact and portable.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform value in [0, bound) by modulo. The slight modulo bias is
  /// irrelevant here; cross-platform reproducibility is what matters.
  u64 next_below(u64 bound) { return next() % bound; }
};

/// Independent stream for item `index` under `seed`: the generator state is a
/// hash of (seed, index), so streams can be evaluated in any order (or in
/// parallel) and still match the sequential result.
inline SplitMix64 stream_for(u64 seed, u64 index) {
  return SplitMix64{mix64(seed ^ mix64(index + 0x2545f4914f6cdd1dull))};
}

}  // namespace graphwave
