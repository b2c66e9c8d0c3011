#include "vdm/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "vdm/errors.hpp"

namespace vdm {

namespace {

std::vector<NeighborGraph::Edge> brute_force_edges(const PointCloud& cloud,
                                                   double radius) {
  const int n = cloud.n();
  std::vector<NeighborGraph::Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dist = (cloud.points.row(i) - cloud.points.row(j)).norm();
      if (dist > 0.0 && dist < radius) edges.push_back({i, j, dist});
    }
  }
  return edges;
}

// Uniform cell grid with cell size = radius. Cells are addressed by a hash of
// their integer coordinates; hash collisions only add candidates, which the
// exact distance check filters out.
std::vector<NeighborGraph::Edge> grid_edges(const PointCloud& cloud,
                                            double radius) {
  const int n = cloud.n();
  const int p = cloud.ambient_dim();

  std::vector<std::int64_t> cell(static_cast<std::size_t>(n) * p);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < p; ++c)
      cell[static_cast<std::size_t>(i) * p + c] =
          static_cast<std::int64_t>(std::floor(cloud.points(i, c) / radius));

  auto hash_cell = [p](const std::int64_t* coords) {
    std::uint64_t h = 1469598103934665603ull;
    for (int c = 0; c < p; ++c) {
      h ^= static_cast<std::uint64_t>(coords[c]);
      h *= 1099511628211ull;
    }
    return h;
  };

  std::unordered_map<std::uint64_t, std::vector<int>> buckets;
  buckets.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    buckets[hash_cell(&cell[static_cast<std::size_t>(i) * p])].push_back(i);

  std::vector<NeighborGraph::Edge> edges;
  std::vector<std::int64_t> probe(p);
  std::vector<const std::vector<int>*> seen;
  for (int i = 0; i < n; ++i) {
    const std::int64_t* home = &cell[static_cast<std::size_t>(i) * p];
    seen.clear();
    // Odometer over the 3^p neighboring cells.
    std::vector<int> offs(p, -1);
    while (true) {
      for (int c = 0; c < p; ++c) probe[c] = home[c] + offs[c];
      auto it = buckets.find(hash_cell(probe.data()));
      if (it != buckets.end() &&
          std::find(seen.begin(), seen.end(), &it->second) == seen.end()) {
        seen.push_back(&it->second);
        for (int j : it->second) {
          if (j <= i) continue;
          const double dist = (cloud.points.row(i) - cloud.points.row(j)).norm();
          if (dist > 0.0 && dist < radius) edges.push_back({i, j, dist});
        }
      }
      int c = 0;
      while (c < p && offs[c] == 1) offs[c++] = -1;
      if (c == p) break;
      ++offs[c];
    }
  }
  return edges;
}

} // namespace

NeighborGraph make_neighbor_graph(int n, double radius,
                                  std::vector<NeighborGraph::Edge> edges) {
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  NeighborGraph graph;
  graph.radius = radius;
  graph.n = n;
  graph.adjacency.resize(n);
  for (const auto& e : edges) {
    graph.adjacency[e.i].push_back({e.j, e.dist});
    graph.adjacency[e.j].push_back({e.i, e.dist});
  }
  for (auto& adj : graph.adjacency)
    std::sort(adj.begin(), adj.end());
  graph.edges = std::move(edges);
  return graph;
}

NeighborGraph build_neighbor_graph(const PointCloud& cloud, double radius) {
  if (!(radius > 0.0)) throw DataError("build_neighbor_graph: radius must be > 0");
  cloud.validate();
  const bool brute = cloud.n() <= 1000;
  auto edges = brute ? brute_force_edges(cloud, radius) : grid_edges(cloud, radius);
  return make_neighbor_graph(cloud.n(), radius, std::move(edges));
}

} // namespace vdm
