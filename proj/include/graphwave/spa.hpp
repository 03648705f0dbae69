#pragma once

#include <vector>

#include "graphwave/common.hpp"

namespace graphwave {

/// Sparse accumulator: dense value array plus occupancy bits plus the list
/// of touched indices. Clearing walks the touched list only, so reuse
/// across many accumulations costs O(output), not O(dimension).
class Spa {
 public:
  Spa() = default;
  explicit Spa(u64 dimension) { resize(dimension); }

  void resize(u64 dimension) {
    if (dimension > values_.size()) {
      values_.resize(dimension, 0);
      occupied_.resize(dimension, 0);
    }
  }

  u64 dimension() const { return values_.size(); }

  /// Combine `value` into slot `index` with max.
  void accumulate(u64 index, u64 value) {
    if (!occupied_[index]) {
      occupied_[index] = 1;
      values_[index] = value;
      touched_.push_back(index);
    } else if (value > values_[index]) {
      values_[index] = value;
    }
  }

  const std::vector<u64>& touched() const { return touched_; }
  u64 value_at(u64 index) const { return values_[index]; }
  bool occupied(u64 index) const { return occupied_[index] != 0; }

  /// Clear only what was touched. Returns the number of slots cleared.
  u64 reset() {
    const u64 cleared = touched_.size();
    for (const u64 index : touched_) {
      occupied_[index] = 0;
    }
    touched_.clear();
    total_cleared_ += cleared;
    return cleared;
  }

  /// Lifetime counter of slots cleared across reset() calls; lets tests
  /// verify that reset work stays proportional to touched entries.
  u64 total_cleared() const { return total_cleared_; }

 private:
  std::vector<u64> values_;
  std::vector<unsigned char> occupied_;
  std::vector<u64> touched_;
  u64 total_cleared_ = 0;
};

}  // namespace graphwave
