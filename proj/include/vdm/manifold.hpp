#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vdm/point_cloud.hpp"

namespace vdm {

enum class ManifoldKind { sphere, torus2, interval, square };
enum class SamplingMode { uniform_iid, grid };

ManifoldKind parse_manifold_kind(const std::string& name);
std::string manifold_kind_name(ManifoldKind kind);
SamplingMode parse_sampling_mode(const std::string& name);
std::string sampling_mode_name(SamplingMode mode);

/// Description of a synthetic test manifold sample.
struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::sphere;
  int dim = 2;        // sphere dimension d (sphere only)
  int n = 0;          // requested point count
  std::uint64_t seed = 0;
  SamplingMode sampling = SamplingMode::uniform_iid;

  /// Intrinsic dimension of the manifold this spec describes.
  int intrinsic_dim() const;
  /// Default sampling mode for the kind (uniform for sphere/torus, grid otherwise).
  static SamplingMode default_sampling(ManifoldKind kind);
};

/// Draws a deterministic sample. The square grid rounds n up to ceil(sqrt(n))^2;
/// all other kinds produce exactly spec.n points.
PointCloud sample(const ManifoldSpec& spec);

/// Orthonormal basis of the exact tangent plane {v : v.x = 0} at a unit vector x.
/// Returns a p x (p-1) matrix with orthonormal columns.
Eigen::MatrixXd analytic_sphere_frame(const Eigen::VectorXd& x);

/// Analytic tangent frames for every point of a sphere cloud (test oracle).
/// Throws DataError if some point is not unit-norm to 1e-8.
std::vector<Eigen::MatrixXd> analytic_sphere_frames(const PointCloud& cloud);

/// Parallel transport along the great circle from T_{xj} to T_{xi}, as a p x p
/// ambient map. Requires unit vectors with x_i != -x_j.
Eigen::MatrixXd sphere_parallel_transport(const Eigen::VectorXd& xi,
                                          const Eigen::VectorXd& xj);

} // namespace vdm
