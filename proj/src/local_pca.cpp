#include "vdm/local_pca.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "vdm/errors.hpp"
#include "vdm/threading.hpp"

namespace vdm {

namespace {

constexpr double kRankTolerance = 1e-12; // relative to the largest singular value

int local_dim_from_singular_values(const Eigen::VectorXd& sigma, double gamma) {
  const int k = static_cast<int>(sigma.size());
  const double cutoff = kRankTolerance * sigma[0];
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    const double s = sigma[j] > cutoff ? sigma[j] : 0.0;
    total += s * s;
  }
  double partial = 0.0;
  for (int j = 0; j < k; ++j) {
    const double s = sigma[j] > cutoff ? sigma[j] : 0.0;
    partial += s * s;
    if (partial / total > gamma) return j + 1;
  }
  return k;
}

} // namespace

int estimate_dimension(const LocalPcaReport& report) {
  if (report.local_dims.empty())
    throw DataError("estimate_dimension: empty report");
  std::vector<int> dims = report.local_dims;
  // Lower median: the floor((k+1)/2)-th order statistic.
  const std::size_t idx = (dims.size() + 1) / 2 - 1;
  std::nth_element(dims.begin(), dims.begin() + idx, dims.end());
  return dims[idx];
}

LocalPcaResult local_pca(const PointCloud& cloud, const NeighborGraph& graph,
                         const KernelSpec& kernel, double gamma,
                         std::optional<int> fixed_dim) {
  const int n = cloud.n();
  const int p = cloud.ambient_dim();
  if (graph.n != n) throw DataError("local_pca: graph/cloud size mismatch");
  if (!fixed_dim && !(gamma > 0.0 && gamma < 1.0))
    throw DataError("local_pca: gamma must lie in (0,1) when no fixed_dim is given");
  if (fixed_dim && *fixed_dim < 1)
    throw DataError("local_pca: fixed_dim must be >= 1");

  LocalPcaReport report;
  report.gamma = gamma;
  report.singular_values.resize(n);
  report.neighbor_counts.resize(n);
  report.local_dims.resize(n);

  // Thin left singular bases, sliced to d columns once d-hat is known.
  std::vector<Eigen::MatrixXd> bases(n);

  parallel_for(0, n, [&](int i) {
    const auto& nbrs = graph.adjacency[i];
    const int ni = static_cast<int>(nbrs.size());
    if (ni < 1)
      throw DataError("local_pca: point " + std::to_string(i) +
                      " has no neighbors within radius " +
                      std::to_string(graph.radius));
    Eigen::MatrixXd b(p, ni);
    for (int c = 0; c < ni; ++c) {
      const auto& [j, dist] = nbrs[c];
      const double scale = std::sqrt(kernel(dist / graph.radius));
      b.col(c) = scale * (cloud.points.row(j) - cloud.points.row(i)).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
    report.singular_values[i] = svd.singularValues();
    report.neighbor_counts[i] = ni;
    report.local_dims[i] = local_dim_from_singular_values(svd.singularValues(), gamma);
    bases[i] = svd.matrixU();
  });

  report.global_dim = estimate_dimension(report);
  const int d = fixed_dim ? *fixed_dim : report.global_dim;

  TangentFrames frames;
  frames.dim = d;
  frames.basis.resize(n);
  for (int i = 0; i < n; ++i) {
    if (report.neighbor_counts[i] < d || bases[i].cols() < d)
      throw DataError("local_pca: point " + std::to_string(i) + " has only " +
                      std::to_string(report.neighbor_counts[i]) +
                      " neighbors; frame of dimension " + std::to_string(d) +
                      " is undefined");
    frames.basis[i] = bases[i].leftCols(d);
  }
  return LocalPcaResult{std::move(report), std::move(frames)};
}

} // namespace vdm
