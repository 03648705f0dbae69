#include "graphwave/bfs_output.hpp"

#include <algorithm>

namespace graphwave {

nlohmann::ordered_json BfsOutput::to_json(bool include_vectors) const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["source"] = source;
  j["levels"] = levels;
  j["reached"] = reached;
  j["edges_traversed"] = edges_traversed;
  if (include_vectors) {
    nlohmann::ordered_json dist = nlohmann::ordered_json::array();
    nlohmann::ordered_json par = nlohmann::ordered_json::array();
    for (u64 v = 0; v < n; ++v) {
      if (distances[v] == kInfDistance) {
        dist.push_back(-1);
      } else {
        dist.push_back(distances[v]);
      }
      if (parents[v] == kNoParent) {
        par.push_back(-1);
      } else {
        par.push_back(parents[v]);
      }
    }
    j["distances"] = std::move(dist);
    j["parents"] = std::move(par);
  }
  return j;
}

u64 count_reached(const std::vector<u64>& distances) {
  return static_cast<u64>(std::count_if(distances.begin(), distances.end(),
                                        [](u64 d) { return d != kInfDistance; }));
}

std::vector<u64> distances_from_parents(const std::vector<u64>& parents, u64 source) {
  const u64 n = parents.size();
  if (source >= n) {
    throw IntegrityError("distances_from_parents: source " + std::to_string(source) +
                         " is outside [0, " + std::to_string(n) + ")");
  }
  if (parents[source] != source) {
    throw IntegrityError("distances_from_parents: source is not its own parent");
  }
  std::vector<u64> depth(n, kInfDistance);
  // 0 = untouched, 1 = on the chain being walked, 2 = depth known
  std::vector<unsigned char> state(n, 0);
  depth[source] = 0;
  state[source] = 2;

  std::vector<u64> chain;
  for (u64 v = 0; v < n; ++v) {
    if (parents[v] == kNoParent || state[v] == 2) {
      continue;
    }
    chain.clear();
    u64 cur = v;
    while (state[cur] != 2) {
      if (state[cur] == 1) {
        throw IntegrityError("distances_from_parents: parent chain of vertex " +
                             std::to_string(v) + " contains a cycle at vertex " +
                             std::to_string(cur));
      }
      state[cur] = 1;
      chain.push_back(cur);
      const u64 p = parents[cur];
      if (p == kNoParent) {
        throw IntegrityError("distances_from_parents: vertex " + std::to_string(cur) +
                             " is claimed as a parent but is itself unreached");
      }
      if (p >= n) {
        throw IntegrityError("distances_from_parents: parent of vertex " + std::to_string(cur) +
                             " is outside [0, " + std::to_string(n) + ")");
      }
      cur = p;
    }
    u64 d = depth[cur];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      depth[*it] = ++d;
      state[*it] = 2;
    }
  }
  return depth;
}

u64 count_traversed_edges(const EdgeList& edges, const std::vector<u64>& distances) {
  u64 count = 0;
  for (const auto& [u, v] : edges.edges) {
    if (u >= distances.size() || v >= distances.size()) {
      throw ContractError("count_traversed_edges: edge endpoint outside the distance array");
    }
    if (distances[u] != kInfDistance && distances[v] != kInfDistance) {
      ++count;
    }
  }
  return count;
}

}  // namespace graphwave
