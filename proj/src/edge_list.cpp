#include "graphwave/edge_list.hpp"

#include <algorithm>

namespace graphwave {

std::vector<Edge> dedup_edges(const std::vector<Edge>& edges) {
  std::vector<Edge> out(edges);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EdgeList symmetrize(const EdgeList& in) {
  std::vector<Edge> both;
  both.reserve(in.edges.size() * 2);
  for (const auto& [u, v] : in.edges) {
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }

  EdgeList out;
  out.n = in.n;
  out.directed = false;
  out.edges = dedup_edges(both);
  out.original_directed_m = dedup_edges(in.edges).size();
  return out;
}

}  // namespace graphwave
