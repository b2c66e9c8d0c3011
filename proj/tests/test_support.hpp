#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "vdm/alignment.hpp"
#include "vdm/neighbor_graph.hpp"
#include "vdm/point_cloud.hpp"
#include "vdm/vdm_operator.hpp"

namespace vdmtest {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int size) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v[i] = normal(rng);
  return v;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = normal(rng);
  return m;
}

/// Haar-ish random orthogonal matrix via QR of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int d,
                                         bool allow_reflection = true) {
  Eigen::MatrixXd g = random_matrix(rng, d, d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix signs so the distribution does not collapse.
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c)
    if (r(c, c) < 0) q.col(c) = -q.col(c);
  if (!allow_reflection && q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

/// All-pairs O(n^2) neighbor oracle.
inline std::vector<vdm::NeighborGraph::Edge> brute_force_edges(
    const vdm::PointCloud& cloud, double radius) {
  std::vector<vdm::NeighborGraph::Edge> edges;
  for (int i = 0; i < cloud.n(); ++i)
    for (int j = i + 1; j < cloud.n(); ++j) {
      const double dist = (cloud.points.row(i) - cloud.points.row(j)).norm();
      if (dist > 0.0 && dist < radius) edges.push_back({i, j, dist});
    }
  return edges;
}

/// Random connected alignment graph with orthogonal blocks (a ring plus
/// random chords), for operator/spectral oracles.
inline vdm::AlignmentGraph random_alignment_graph(int n, int d,
                                                  double extra_edge_prob,
                                                  std::uint64_t seed,
                                                  bool identity_blocks = false) {
  auto rng = make_rng(seed);
  vdm::AlignmentGraph graph;
  graph.n = n;
  graph.d = d;
  graph.radius = 1.0;
  auto add_edge = [&](int i, int j) {
    vdm::AlignmentGraph::Edge edge;
    edge.i = i;
    edge.j = j;
    edge.w = 0.1 + uniform01(rng);
    edge.rot = identity_blocks ? Eigen::MatrixXd::Identity(d, d)
                               : random_orthogonal(rng, d);
    graph.edges.push_back(std::move(edge));
  };
  for (int i = 0; i < n - 1; ++i) add_edge(i, i + 1);
  if (n > 2) add_edge(0, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n - (i == 0 ? 1 : 0); ++j)
      if (uniform01(rng) < extra_edge_prob) add_edge(i, j);

  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const auto& a, const auto& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  graph.degrees = Eigen::VectorXd::Zero(n);
  graph.adjacency.assign(n, {});
  for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
    const auto& edge = graph.edges[e];
    graph.degrees[edge.i] += edge.w;
    graph.degrees[edge.j] += edge.w;
    graph.adjacency[edge.i].push_back({edge.j, e});
    graph.adjacency[edge.j].push_back({edge.i, e});
  }
  for (auto& adj : graph.adjacency) std::sort(adj.begin(), adj.end());
  return graph;
}

/// Dense S_alpha assembly (test oracle; keep n*d small).
inline Eigen::MatrixXd dense_s_alpha(const vdm::AlignmentGraph& graph,
                                     double alpha) {
  const int d = graph.d;
  Eigen::VectorXd deg_pow(graph.n);
  for (int i = 0; i < graph.n; ++i)
    deg_pow[i] = std::pow(graph.degrees[i], -alpha);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(graph.n * d, graph.n * d);
  for (const auto& edge : graph.edges) {
    const double w = edge.w * deg_pow[edge.i] * deg_pow[edge.j];
    s.block(edge.i * d, edge.j * d, d, d) = w * edge.rot;
    s.block(edge.j * d, edge.i * d, d, d) = w * edge.rot.transpose();
  }
  return s;
}

/// deg_alpha per node: row sums of the scalar alpha-normalized weights.
inline Eigen::VectorXd dense_deg_alpha(const vdm::AlignmentGraph& graph,
                                       double alpha) {
  Eigen::VectorXd deg(graph.n);
  Eigen::VectorXd deg_pow(graph.n);
  for (int i = 0; i < graph.n; ++i)
    deg_pow[i] = std::pow(graph.degrees[i], -alpha);
  deg.setZero();
  for (const auto& edge : graph.edges) {
    const double w = edge.w * deg_pow[edge.i] * deg_pow[edge.j];
    deg[edge.i] += w;
    deg[edge.j] += w;
  }
  return deg;
}

/// Dense symmetric S~_alpha = D_alpha^-1/2 S_alpha D_alpha^-1/2.
inline Eigen::MatrixXd dense_sym(const vdm::AlignmentGraph& graph, double alpha) {
  const int d = graph.d;
  const Eigen::MatrixXd s = dense_s_alpha(graph, alpha);
  const Eigen::VectorXd deg = dense_deg_alpha(graph, alpha);
  Eigen::VectorXd scale(graph.n * d);
  for (int i = 0; i < graph.n; ++i)
    scale.segment(i * d, d).setConstant(1.0 / std::sqrt(deg[i]));
  return scale.asDiagonal() * s * scale.asDiagonal();
}

/// Spearman rank correlation (average ranks for ties).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  auto ranks = [n](const std::vector<double>& x) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&x](int u, int v) { return x[u] < x[v]; });
    std::vector<double> rank(n);
    std::size_t k = 0;
    while (k < n) {
      std::size_t k2 = k;
      while (k2 + 1 < n && x[order[k2 + 1]] == x[order[k]]) ++k2;
      const double avg = 0.5 * (k + k2) + 1.0;
      for (std::size_t q = k; q <= k2; ++q) rank[order[q]] = avg;
      k = k2 + 1;
    }
    return rank;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double mean = (n + 1) / 2.0;
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (ra[i] - mean) * (rb[i] - mean);
    da += (ra[i] - mean) * (ra[i] - mean);
    db += (rb[i] - mean) * (rb[i] - mean);
  }
  return num / std::sqrt(da * db);
}

/// Largest principal angle between the column spans of two orthonormal bases.
inline double subspace_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
  const double c = std::min(1.0, svd.singularValues().minCoeff());
  return std::acos(c);
}

/// Random graph with integer weights; every path sum is then exact in double,
/// so Dijkstra and Floyd-Warshall must agree bit for bit.
inline vdm::NeighborGraph random_int_graph(int n, double edge_prob,
                                           std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::vector<vdm::NeighborGraph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform01(rng) < edge_prob) {
        const double w = 1.0 + std::floor(uniform01(rng) * 100.0);
        edges.push_back({i, j, w});
      }
  return vdm::make_neighbor_graph(n, 1e9, std::move(edges));
}

/// O(n^3) all-pairs shortest-path oracle.
inline Eigen::MatrixXd floyd_warshall(const vdm::NeighborGraph& graph) {
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(graph.n, graph.n, inf);
  for (int i = 0; i < graph.n; ++i) dist(i, i) = 0.0;
  for (const auto& e : graph.edges) {
    dist(e.i, e.j) = std::min(dist(e.i, e.j), e.dist);
    dist(e.j, e.i) = dist(e.i, e.j);
  }
  for (int k = 0; k < graph.n; ++k)
    for (int i = 0; i < graph.n; ++i)
      for (int j = 0; j < graph.n; ++j)
        if (dist(i, k) + dist(k, j) < dist(i, j))
          dist(i, j) = dist(i, k) + dist(k, j);
  return dist;
}

} // namespace vdmtest
