#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "vdm/kernel.hpp"
#include "vdm/local_pca.hpp"
#include "vdm/neighbor_graph.hpp"

namespace vdm {

/// Weighted graph whose every edge carries the optimal O(d) alignment of the
/// two tangent frames. rot on edge (i,j) with i < j transports coefficients
/// from the frame at j to the frame at i; the reverse direction is rot^T.
struct AlignmentGraph {
  struct Edge {
    int i, j; // i < j
    double w;
    Eigen::MatrixXd rot; // O_ij, d x d orthogonal
  };

  int n = 0;
  int d = 0;
  double radius = 0.0; // sqrt(eps) used to build the underlying graph
  std::vector<Edge> edges;
  Eigen::VectorXd degrees; // deg(i) = sum_j w_ij, all > 0
  // Per-node (neighbor, edge index) pairs sorted by neighbor index.
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  /// Alignment block from j's frame into i's frame for edge index e.
  Eigen::MatrixXd rotation(int e, int into) const {
    const Edge& edge = edges[e];
    return into == edge.i ? edge.rot : edge.rot.transpose();
  }
};

/// Closest orthogonal matrix in the Hilbert-Schmidt norm, via SVD (U V^T).
/// Throws NumericalError when m is rank deficient (sigma_min < 1e-12).
Eigen::MatrixXd closest_orthogonal(const Eigen::MatrixXd& m);

/// Aligns every edge of the radius-sqrt(eps) graph: O_ij is the closest
/// orthogonal matrix to O_i^T O_j and w_ij = K(||x_i - x_j|| / radius).
/// Edges whose weight vanishes are dropped; isolated vertices are an error.
AlignmentGraph align_frames(const TangentFrames& frames,
                            const NeighborGraph& graph,
                            const KernelSpec& kernel);

} // namespace vdm
