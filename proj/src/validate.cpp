#include "graphwave/validate.hpp"

#include <map>
#include <unordered_set>

namespace graphwave {

namespace {

std::string depth_str(u64 d) {
  return d == kInfDistance ? "unreached" : "depth " + std::to_string(d);
}

class Reporter {
 public:
  Reporter(std::vector<Violation>& sink, u64 cap) : sink_(sink), cap_(cap) {}

  void add(const char* check, std::string detail) {
    const u64 count = ++counts_[check];
    if (count <= cap_) {
      sink_.push_back({check, std::move(detail)});
    } else if (count == cap_ + 1) {
      sink_.push_back({check, "further violations suppressed"});
    }
  }

 private:
  std::vector<Violation>& sink_;
  u64 cap_;
  std::map<std::string, u64> counts_;
};

}  // namespace

std::vector<Violation> validate_bfs(const EdgeList& g, const BfsOutput& out, u64 max_per_check) {
  std::vector<Violation> violations;
  Reporter report(violations, max_per_check);

  if (out.n != g.n || out.distances.size() != g.n || out.parents.size() != g.n ||
      out.source >= g.n) {
    report.add("shape", "output arrays do not match the graph (n=" + std::to_string(g.n) +
                            ", distances=" + std::to_string(out.distances.size()) +
                            ", parents=" + std::to_string(out.parents.size()) +
                            ", source=" + std::to_string(out.source) + ")");
    return violations;
  }
  if (g.n > kPackLimit) {
    throw ContractError("validate_bfs: vertex ids must fit in 32 bits");
  }

  const u64 n = g.n;
  const std::vector<u64>& dist = out.distances;
  const std::vector<u64>& parent = out.parents;

  if (dist[out.source] != 0) {
    report.add("depth", "source " + std::to_string(out.source) + " is at " +
                            depth_str(dist[out.source]) + " instead of depth 0");
  }
  if (parent[out.source] != out.source) {
    report.add("tree", "source " + std::to_string(out.source) + " is not its own parent");
  }

  for (u64 v = 0; v < n; ++v) {
    const bool has_depth = dist[v] != kInfDistance;
    const bool has_parent = parent[v] != kNoParent;
    if (has_depth != has_parent) {
      report.add("tree", "vertex " + std::to_string(v) + " has " + depth_str(dist[v]) +
                             (has_parent ? " but a parent" : " but no parent"));
      continue;
    }
    if (!has_depth || v == out.source) {
      continue;
    }
    const u64 p = parent[v];
    if (p >= n) {
      report.add("tree", "parent of vertex " + std::to_string(v) + " is out of range");
      continue;
    }
    if (dist[p] == kInfDistance) {
      report.add("tree", "vertex " + std::to_string(v) + " (depth " + std::to_string(dist[v]) +
                             ") has unreached parent " + std::to_string(p));
      continue;
    }
    // With every parent exactly one level up, chains must terminate at the
    // source, so no separate cycle walk is needed.
    if (dist[v] != dist[p] + 1) {
      report.add("depth", "vertex " + std::to_string(v) + " at depth " + std::to_string(dist[v]) +
                              " has parent " + std::to_string(p) + " at " + depth_str(dist[p]));
    }
  }

  std::unordered_set<u64> edge_set;
  edge_set.reserve(g.edges.size() * (g.directed ? 1 : 2));
  for (const auto& [u, v] : g.edges) {
    if (u >= n || v >= n) {
      throw ContractError("validate_bfs: edge endpoint outside [0, n)");
    }
    edge_set.insert(pack_pair(u, v));
    if (!g.directed) {
      edge_set.insert(pack_pair(v, u));
    }
  }

  for (u64 v = 0; v < n; ++v) {
    if (v == out.source || parent[v] == kNoParent || parent[v] >= n) {
      continue;
    }
    if (edge_set.count(pack_pair(parent[v], v)) == 0) {
      report.add("tree-edge", "claimed tree edge " + std::to_string(parent[v]) + " -> " +
                                  std::to_string(v) + " is not in the graph");
    }
  }

  auto check_span = [&](u64 u, u64 v) {
    if (u == v) {
      return;
    }
    if (dist[u] == kInfDistance) {
      return;  // nothing is implied by an edge out of an unreached vertex
    }
    if (dist[v] == kInfDistance) {
      report.add("span", "edge " + std::to_string(u) + " -> " + std::to_string(v) +
                             " leaves the reached set (" + std::to_string(u) + " at depth " +
                             std::to_string(dist[u]) + ")");
      return;
    }
    if (dist[v] > dist[u] + 1) {
      report.add("span", "edge " + std::to_string(u) + " -> " + std::to_string(v) +
                             " spans depths " + std::to_string(dist[u]) + " and " +
                             std::to_string(dist[v]));
    }
  };
  for (const auto& [u, v] : g.edges) {
    check_span(u, v);
    if (!g.directed) {
      check_span(v, u);
    }
  }

  return violations;
}

}  // namespace graphwave
