#pragma once

#include <utility>
#include <vector>

#include "vdm/point_cloud.hpp"

namespace vdm {

/// Undirected radius graph: edge (i,j) present iff 0 < ||x_i - x_j|| < radius.
struct NeighborGraph {
  struct Edge {
    int i, j;    // i < j
    double dist; // Euclidean distance, exact to floating precision
  };

  double radius = 0.0;
  int n = 0;
  std::vector<Edge> edges; // lexicographic by (i, j)
  // Per-node (neighbor, distance) pairs sorted by neighbor index.
  std::vector<std::vector<std::pair<int, double>>> adjacency;

  int degree(int i) const { return static_cast<int>(adjacency[i].size()); }
};

NeighborGraph build_neighbor_graph(const PointCloud& cloud, double radius);

/// Assembles the adjacency index from an edge list (for synthetic test graphs).
NeighborGraph make_neighbor_graph(int n, double radius,
                                  std::vector<NeighborGraph::Edge> edges);

} // namespace vdm
