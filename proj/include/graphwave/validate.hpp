#pragma once

#include <string>
#include <vector>

#include "graphwave/bfs_output.hpp"
#include "graphwave/edge_list.hpp"

namespace graphwave {

/// One failed consistency rule, as data rather than an exception: callers
/// decide whether a bad traversal aborts a run or just gets reported.
struct Violation {
  std::string check;   // which rule fired
  std::string detail;  // vertices/edges involved
};

/// Independent audit of a traversal against the graph it ran on. Rules:
///   tree        parents form a tree rooted at the source (no cycles, no
///               unreached parents, source is its own parent)
///   depth       every non-source reached vertex is exactly one level
///               deeper than its parent, and the source is at depth zero
///   tree-edge   every (parent, child) pair is an edge of the graph
///   span        no graph edge connects a reached vertex to an unreached
///               one, and reached endpoints differ by at most one level
/// Array cross-consistency (distance and parent agree on who is reached,
/// sizes match n) is checked first; per-rule reporting caps at
/// `max_per_check` entries and appends a truncation marker.
std::vector<Violation> validate_bfs(const EdgeList& g, const BfsOutput& out,
                                    u64 max_per_check = 25);

}  // namespace graphwave
