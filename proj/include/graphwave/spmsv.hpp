#pragma once

#include "graphwave/dcsc.hpp"
#include "graphwave/spa.hpp"
#include "graphwave/sparse_vector.hpp"

namespace graphwave {

/// Accumulation backend for sparse matrix * sparse vector.
///
/// The SPA walks column segments into a dense accumulator and sorts the
/// touched indices afterwards; the heap merges the selected column segments
/// directly, keyed by row. The SPA's dense arrays amortize well while each
/// rank still owns a tall block; once a simulated machine is cut into very
/// many ranks the per-rank output is too sparse to pay for them, so Auto
/// switches to the heap at a rank-count threshold (default 10000).
enum class SpmsvMode { Spa, Heap, Auto };

struct SpmsvBackend {
  SpmsvMode mode = SpmsvMode::Auto;
  u64 auto_rank_threshold = 10000;
  u64 simulated_ranks = 1;  // consulted by Auto only

  SpmsvMode resolve() const {
    if (mode != SpmsvMode::Auto) {
      return mode;
    }
    return simulated_ranks >= auto_rank_threshold ? SpmsvMode::Heap : SpmsvMode::Spa;
  }
};

/// y = A (*) f over the (select, max) semiring: contributing column k adds
/// candidate value f.value(k) to every row of its segment, equal rows keep
/// the max. f indices are block-local columns, strictly increasing (checked;
/// ContractError otherwise). Output indices are strictly increasing rows.
/// `scratch` (SPA path only) avoids reallocation across calls; pass the same
/// object per execution stripe.
SparseVector spmsv(const Dcsc& a, const SparseVector& f, const SpmsvBackend& backend,
                   Spa* scratch = nullptr);

/// Work the multiply would do: sum of selected column segment lengths.
u64 spmsv_flop_count(const Dcsc& a, const SparseVector& f);

}  // namespace graphwave
