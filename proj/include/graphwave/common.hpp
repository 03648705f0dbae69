#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace graphwave {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Vertex ids are 64-bit throughout. Unreached distances and absent parents
/// both use the maximum representable value as the sentinel.
constexpr u64 kInfDistance = std::numeric_limits<u64>::max();
constexpr u64 kNoParent = std::numeric_limits<u64>::max();

/// Loaded edge endpoints must stay below this bound; anything larger is
/// almost certainly a corrupt file rather than a real graph.
constexpr u64 kMaxVertexId = u64{1} << 48;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run parameters: impossible grids, overflowing sizes, bad modes.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (text or binary edge lists, machine-param files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Mismatched or deadlocked collective sequences inside the simulator.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Structurally broken data discovered mid-computation (parent cycles, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Half-open index interval [begin, end).
struct Range {
  u64 begin = 0;
  u64 end = 0;

  u64 size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(u64 v) const { return v >= begin && v < end; }
  bool operator==(const Range& other) const = default;
};

/// Ceiling-based block chunking: part k of [0, n) split into `parts` blocks
/// of ⌈n/parts⌉ elements, the last block truncated (possibly empty).
inline Range chunk_range(u64 n, u64 parts, u64 k) {
  const u64 len = parts == 0 ? n : (n + parts - 1) / parts;
  const u64 begin = std::min(k * len, n);
  return Range{begin, std::min(begin + len, n)};
}

/// Owner of element v under the chunking above: ⌊v / ⌈n/parts⌉⌋.
inline u64 chunk_owner(u64 n, u64 parts, u64 v) {
  const u64 len = (n + parts - 1) / parts;
  return len == 0 ? 0 : v / len;
}

/// Engines ship (vertex, candidate parent) in one 64-bit word so that one
/// transmitted word corresponds to one frontier/adjacency element. Callers
/// enforce n < 2^32 before packing.
constexpr u64 kPackLimit = u64{1} << 32;

inline u64 pack_pair(u64 hi, u64 lo) { return (hi << 32) | (lo & 0xffffffffull); }
inline u64 unpack_hi(u64 w) { return w >> 32; }
inline u64 unpack_lo(u64 w) { return w & 0xffffffffull; }

}  // namespace graphwave
