#pragma once

#include <vector>

#include "graphwave/common.hpp"

namespace graphwave {

/// Sparse vector as parallel arrays: strictly increasing indices with one
/// value each. BFS frontiers store candidate-parent ids as values.
struct SparseVector {
  std::vector<u64> indices;
  std::vector<u64> values;

  u64 nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }

  void push(u64 index, u64 value) {
    indices.push_back(index);
    values.push_back(value);
  }

  bool operator==(const SparseVector& other) const = default;

  /// Throws ContractError unless indices are strictly increasing and below
  /// `bound`, with one value per index.
  void check_valid(u64 bound, const char* who) const {
    if (values.size() != indices.size()) {
      throw ContractError(std::string(who) + ": index/value arrays differ in length");
    }
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] >= bound) {
        throw ContractError(std::string(who) + ": index " + std::to_string(indices[i]) +
                            " outside [0, " + std::to_string(bound) + ")");
      }
      if (i > 0 && indices[i] <= indices[i - 1]) {
        throw ContractError(std::string(who) + ": indices not strictly increasing");
      }
    }
  }
};

}  // namespace graphwave
