#include "vdm/geodesic.hpp"

#include <limits>
#include <queue>
#include <vector>

#include "vdm/errors.hpp"

namespace vdm {

GeodesicResult dijkstra(const NeighborGraph& graph, int source) {
  if (source < 0 || source >= graph.n)
    throw DataError("dijkstra: source out of range");

  const double inf = std::numeric_limits<double>::infinity();
  GeodesicResult result;
  result.source = source;
  result.distances = Eigen::VectorXd::Constant(graph.n, inf);
  result.distances[source] = 0.0;

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  heap.push({0.0, source});
  std::vector<char> settled(graph.n, 0);

  while (!heap.empty()) {
    const auto [dist, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    for (const auto& [v, w] : graph.adjacency[u]) {
      const double candidate = dist + w;
      if (candidate < result.distances[v]) {
        result.distances[v] = candidate;
        heap.push({candidate, v});
      }
    }
  }
  return result;
}

} // namespace vdm
