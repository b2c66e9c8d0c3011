#include "vdm/manifold.hpp"

#include <cmath>
#include <random>

#include "vdm/errors.hpp"

namespace vdm {

namespace {

// Uniform double in [0,1) from the top 53 bits; fixed algorithm so that the
// same seed yields the same cloud on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller. Uses (0,1] for the log argument.
inline void normal_pair(std::mt19937_64& rng, double& a, double& b) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  a = r * std::cos(2.0 * M_PI * u2);
  b = r * std::sin(2.0 * M_PI * u2);
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int p) {
  Eigen::VectorXd g(p);
  int i = 0;
  while (i + 1 < p) {
    normal_pair(rng, g[i], g[i + 1]);
    i += 2;
  }
  if (i < p) {
    double a, b;
    normal_pair(rng, a, b);
    g[i] = a;
  }
  return g;
}

PointCloud sample_sphere(const ManifoldSpec& spec) {
  const int p = spec.dim + 1;
  std::mt19937_64 rng(spec.seed);
  Eigen::MatrixXd pts(spec.n, p);
  for (int i = 0; i < spec.n; ++i) {
    Eigen::VectorXd g = gaussian_vector(rng, p);
    double norm = g.norm();
    while (norm < 1e-12) {
      g = gaussian_vector(rng, p);
      norm = g.norm();
    }
    pts.row(i) = (g / norm).transpose();
  }
  return PointCloud{std::move(pts)};
}

PointCloud sample_torus(const ManifoldSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Eigen::MatrixXd pts(spec.n, 3);
  for (int i = 0; i < spec.n; ++i) {
    const double u = 2.0 * M_PI * uniform01(rng);
    const double v = 2.0 * M_PI * uniform01(rng);
    pts(i, 0) = (2.0 + std::cos(v)) * std::cos(u);
    pts(i, 1) = (2.0 + std::cos(v)) * std::sin(u);
    pts(i, 2) = std::sin(v);
  }
  return PointCloud{std::move(pts)};
}

PointCloud sample_interval(const ManifoldSpec& spec) {
  Eigen::MatrixXd pts(spec.n, 1);
  if (spec.n == 1) {
    pts(0, 0) = -M_PI;
  } else {
    for (int i = 0; i < spec.n; ++i)
      pts(i, 0) = -M_PI + 2.0 * M_PI * static_cast<double>(i) / (spec.n - 1);
  }
  return PointCloud{std::move(pts)};
}

PointCloud sample_square(const ManifoldSpec& spec) {
  const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spec.n))));
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(m) * m, 2);
  for (int ix = 0; ix < m; ++ix) {
    const double x = (m == 1) ? 0.0 : 2.0 * M_PI * static_cast<double>(ix) / (m - 1);
    for (int iy = 0; iy < m; ++iy) {
      const double y = (m == 1) ? 0.0 : 2.0 * M_PI * static_cast<double>(iy) / (m - 1);
      pts(static_cast<Eigen::Index>(ix) * m + iy, 0) = x;
      pts(static_cast<Eigen::Index>(ix) * m + iy, 1) = y;
    }
  }
  return PointCloud{std::move(pts)};
}

} // namespace

ManifoldKind parse_manifold_kind(const std::string& name) {
  if (name == "sphere") return ManifoldKind::sphere;
  if (name == "torus" || name == "torus2") return ManifoldKind::torus2;
  if (name == "interval") return ManifoldKind::interval;
  if (name == "square") return ManifoldKind::square;
  throw DataError("unknown manifold kind: " + name);
}

std::string manifold_kind_name(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::sphere: return "sphere";
    case ManifoldKind::torus2: return "torus2";
    case ManifoldKind::interval: return "interval";
    case ManifoldKind::square: return "square";
  }
  return "?";
}

SamplingMode parse_sampling_mode(const std::string& name) {
  if (name == "uniform" || name == "uniform_iid") return SamplingMode::uniform_iid;
  if (name == "grid") return SamplingMode::grid;
  throw DataError("unknown sampling mode: " + name);
}

std::string sampling_mode_name(SamplingMode mode) {
  return mode == SamplingMode::uniform_iid ? "uniform_iid" : "grid";
}

int ManifoldSpec::intrinsic_dim() const {
  switch (kind) {
    case ManifoldKind::sphere: return dim;
    case ManifoldKind::torus2: return 2;
    case ManifoldKind::interval: return 1;
    case ManifoldKind::square: return 2;
  }
  return 0;
}

SamplingMode ManifoldSpec::default_sampling(ManifoldKind kind) {
  return (kind == ManifoldKind::interval || kind == ManifoldKind::square)
             ? SamplingMode::grid
             : SamplingMode::uniform_iid;
}

PointCloud sample(const ManifoldSpec& spec) {
  if (spec.n < 1) throw DataError("sample: n must be >= 1");
  switch (spec.kind) {
    case ManifoldKind::sphere:
      if (spec.dim < 1) throw DataError("sample: sphere dimension must be >= 1");
      if (spec.sampling != SamplingMode::uniform_iid)
        throw DataError("sample: sphere supports uniform_iid sampling only");
      return sample_sphere(spec);
    case ManifoldKind::torus2:
      if (spec.sampling != SamplingMode::uniform_iid)
        throw DataError("sample: torus2 supports uniform_iid sampling only");
      return sample_torus(spec);
    case ManifoldKind::interval:
      if (spec.sampling != SamplingMode::grid)
        throw DataError("sample: interval supports grid sampling only");
      return sample_interval(spec);
    case ManifoldKind::square:
      if (spec.sampling != SamplingMode::grid)
        throw DataError("sample: square supports grid sampling only");
      return sample_square(spec);
  }
  throw DataError("sample: unsupported manifold kind");
}

Eigen::MatrixXd analytic_sphere_frame(const Eigen::VectorXd& x) {
  const int p = static_cast<int>(x.size());
  Eigen::VectorXd u = x;
  u[p - 1] -= 1.0;
  const double nu = u.norm();
  Eigen::MatrixXd frame(p, p - 1);
  if (nu < 1e-12) {
    // x is (numerically) the pole e_p; the tangent plane is span(e_1..e_{p-1}).
    frame = Eigen::MatrixXd::Identity(p, p).leftCols(p - 1);
    return frame;
  }
  u /= nu;
  // Householder reflection mapping e_p to x; its first p-1 columns span x-perp.
  for (int c = 0; c < p - 1; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(p);
    e[c] = 1.0;
    frame.col(c) = e - 2.0 * u[c] * u;
  }
  return frame;
}

std::vector<Eigen::MatrixXd> analytic_sphere_frames(const PointCloud& cloud) {
  std::vector<Eigen::MatrixXd> frames;
  frames.reserve(cloud.n());
  for (int i = 0; i < cloud.n(); ++i) {
    Eigen::VectorXd x = cloud.point(i);
    if (std::abs(x.norm() - 1.0) > 1e-8)
      throw DataError("analytic_sphere_frames: point " + std::to_string(i) +
                      " is not on the unit sphere");
    frames.push_back(analytic_sphere_frame(x));
  }
  return frames;
}

Eigen::MatrixXd sphere_parallel_transport(const Eigen::VectorXd& xi,
                                          const Eigen::VectorXd& xj) {
  const double c = xi.dot(xj);
  if (c <= -1.0 + 1e-12)
    throw DataError("sphere_parallel_transport: antipodal points");
  const Eigen::VectorXd s = xi + xj;
  return Eigen::MatrixXd::Identity(xi.size(), xi.size()) -
         (s * s.transpose()) / (1.0 + c) + 2.0 * xi * xj.transpose();
}

} // namespace vdm
