#pragma once

#include <Eigen/Core>

#include "vdm/neighbor_graph.hpp"

namespace vdm {

/// Single-source graph-geodesic distances; +inf marks unreachable vertices.
struct GeodesicResult {
  int source = 0;
  Eigen::VectorXd distances;
};

/// Exact single-source shortest paths with Euclidean edge weights
/// (binary-heap Dijkstra, ties resolved by vertex index).
GeodesicResult dijkstra(const NeighborGraph& graph, int source);

} // namespace vdm
