#pragma once

#include <string>

#include "graphwave/edge_list.hpp"

namespace graphwave {

enum class EdgeFormat { Text, Binary };

/// Text format: one "u v" pair per line, '#' starts a comment, blank lines
/// ignored. n = 1 + max id seen.
///
/// Binary format: little-endian 16-byte records (u64 u, u64 v), with an
/// optional 24-byte header: magic "GWEL", u32 version (1 = directed stream,
/// 2 = symmetrized stream), u64 n, u64 m. Headerless files must be a whole
/// number of records; n is inferred from the ids.
///
/// Both loaders reject ids >= 2^48 (sanity bound) with a ParseError naming
/// the offending line or record.
EdgeList load_edge_list(const std::string& path, EdgeFormat format);

/// Writes the canonical form of `format` (binary always gets a header).
void save_edge_list(const EdgeList& list, const std::string& path, EdgeFormat format);

}  // namespace graphwave
