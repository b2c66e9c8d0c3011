#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "vdm/kernel.hpp"
#include "vdm/neighbor_graph.hpp"
#include "vdm/point_cloud.hpp"

namespace vdm {

/// Per-point weighted-PCA diagnostics and the local/global dimension estimates.
struct LocalPcaReport {
  std::vector<Eigen::VectorXd> singular_values; // descending, per point
  std::vector<int> neighbor_counts;             // N_i
  std::vector<int> local_dims;                  // d_i
  int global_dim = 0;                           // d-hat = lower median of d_i
  double gamma = 0.9;
};

/// Per-point p x d column-orthonormal tangent bases.
struct TangentFrames {
  std::vector<Eigen::MatrixXd> basis;
  int dim = 0;

  int n() const { return static_cast<int>(basis.size()); }
};

struct LocalPcaResult {
  LocalPcaReport report;
  TangentFrames frames;
};

/// Weighted local PCA at every point of the cloud. The graph must have been
/// built with radius sqrt(eps_pca); column j of the data matrix is
/// (x_{i_j} - x_i) * sqrt(K(dist/radius)), i.e. shifted by x_i.
/// Frame dimension is fixed_dim when given, otherwise the lower median of the
/// per-point gamma-threshold dimensions.
LocalPcaResult local_pca(const PointCloud& cloud, const NeighborGraph& graph,
                         const KernelSpec& kernel, double gamma,
                         std::optional<int> fixed_dim = std::nullopt);

/// Lower median of the per-point dimension estimates.
int estimate_dimension(const LocalPcaReport& report);

} // namespace vdm
