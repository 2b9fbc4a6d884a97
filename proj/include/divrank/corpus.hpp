#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "divrank/graph.hpp"

namespace divrank {

inline Multigraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) edges.push_back({static_cast<int>(u), static_cast<int>(v), 1});
  return Multigraph::from_edges(n, edges);
}

inline Multigraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) edges.push_back({static_cast<int>(u), static_cast<int>((u + 1) % n), 1});
  return Multigraph::from_edges(n, edges);
}

inline Multigraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u + 1 < n; ++u) edges.push_back({static_cast<int>(u), static_cast<int>(u + 1), 1});
  return Multigraph::from_edges(n, edges);
}

/// Two vertices joined by k parallel edges.
inline Multigraph banana_graph(std::int64_t k) { return Multigraph::from_edges(2, {{0, 1, k}}); }

struct NamedGraph {
  std::string name;
  Multigraph graph;
};

/// The fixed test corpus: small graphs covering trees, cycles, a complete graph,
/// multi-edges and a mixed-multiplicity multigraph.
inline std::vector<NamedGraph> corpus() {
  return {
      {"triangle", complete_graph(3)},
      {"path3", path_graph(3)},
      {"cycle4", cycle_graph(4)},
      {"cycle5", cycle_graph(5)},
      {"k4", complete_graph(4)},
      {"banana2", banana_graph(2)},
      {"banana3", banana_graph(3)},
      {"mixed4", Multigraph::from_edges(4, {{0, 1, 2}, {1, 2, 1}, {2, 3, 2}, {3, 0, 1}, {0, 2, 1}})},
  };
}

}  // namespace divrank
