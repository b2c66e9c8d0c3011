#include "vdm/nystrom.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "vdm/errors.hpp"

namespace vdm {

NystromExtender::NystromExtender(const PointCloud& cloud,
                                 const TangentFrames& frames,
                                 const AlignmentGraph& agraph,
                                 const Spectrum& spectrum, double alpha,
                                 ExtensionConfig cfg)
    : cloud_(cloud),
      frames_(frames),
      spectrum_(spectrum),
      cfg_(std::move(cfg)),
      radius_w_(agraph.radius) {
  if (!(cfg_.delta > 0.0)) throw DataError("NystromExtender: delta must be > 0");
  if (!(cfg_.eps_pca > 0.0))
    throw DataError("NystromExtender: eps_pca must be > 0");
  if (spectrum_.n != cloud_.n() || frames_.n() != cloud_.n())
    throw DataError("NystromExtender: size mismatch");

  while (retained_ < spectrum_.size() &&
         std::abs(spectrum_.values[retained_]) > cfg_.delta)
    ++retained_;
  if (retained_ == 0)
    throw DataError(
        "NystromExtender: no eigenvalue exceeds delta; nothing retained");

  // Query kernel weights are alpha-normalized by the in-sample density
  // p_eps(x_j) = deg(j); the query's own density factor cancels.
  density_alpha_.resize(agraph.n);
  for (int j = 0; j < agraph.n; ++j)
    density_alpha_[j] = std::pow(agraph.degrees[j], -alpha);

  right_vectors_.resize(spectrum_.vectors.rows(), retained_);
  for (int l = 0; l < retained_; ++l)
    right_vectors_.col(l) = spectrum_.right_eigenvector(l);
}

SampledVectorField NystromExtender::project_field(
    const Eigen::MatrixXd& ambient) const {
  const int n = cloud_.n();
  const int d = frames_.dim;
  if (ambient.rows() != n || ambient.cols() != cloud_.ambient_dim())
    throw DataError("project_field: ambient field shape mismatch");

  SampledVectorField field;
  field.coeffs.resize(n * d);
  for (int i = 0; i < n; ++i)
    field.coeffs.segment(i * d, d) =
        frames_.basis[i].transpose() * ambient.row(i).transpose();

  // a_l = <x, w_l>_D; the w_l are D-orthonormal, so x = sum_l a_l w_l over the
  // full basis.
  field.spectral.resize(retained_);
  for (int l = 0; l < retained_; ++l) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += spectrum_.degrees[i] *
             field.coeffs.segment(i * d, d)
                 .dot(right_vectors_.col(l).segment(i * d, d));
    field.spectral[l] = acc;
  }
  return field;
}

Eigen::MatrixXd NystromExtender::query_frame(const Eigen::VectorXd& y) const {
  const int p = cloud_.ambient_dim();
  const int d = frames_.dim;
  const double radius = std::sqrt(cfg_.eps_pca);

  std::vector<std::pair<int, double>> nbrs;
  for (int j = 0; j < cloud_.n(); ++j) {
    const double dist = (cloud_.points.row(j).transpose() - y).norm();
    if (dist > 0.0 && dist < radius) nbrs.push_back({j, dist});
  }
  if (static_cast<int>(nbrs.size()) < d)
    throw DataError("query_frame: only " + std::to_string(nbrs.size()) +
                    " in-sample neighbors within sqrt(eps_pca); need >= " +
                    std::to_string(d));

  Eigen::MatrixXd b(p, nbrs.size());
  for (int c = 0; c < static_cast<int>(nbrs.size()); ++c) {
    const auto& [j, dist] = nbrs[c];
    b.col(c) = std::sqrt(cfg_.kernel_pca(dist / radius)) *
               (cloud_.points.row(j).transpose() - y);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
  if (svd.matrixU().cols() < d)
    throw DataError("query_frame: neighborhood is rank deficient");
  return svd.matrixU().leftCols(d);
}

Eigen::MatrixXd NystromExtender::extend_eigenfields(
    const Eigen::VectorXd& y, const Eigen::MatrixXd& frame_y) const {
  const int d = frames_.dim;

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, retained_);
  double total_weight = 0.0;
  for (int j = 0; j < cloud_.n(); ++j) {
    const double dist = (cloud_.points.row(j).transpose() - y).norm();
    if (!(dist > 0.0 && dist < radius_w_)) continue;
    const double k = cfg_.kernel_w(dist / radius_w_) * density_alpha_[j];
    if (k <= 0.0) continue;
    const Eigen::MatrixXd rot =
        closest_orthogonal(frame_y.transpose() * frames_.basis[j]);
    for (int l = 0; l < retained_; ++l)
      acc.col(l).noalias() +=
          k * (rot * right_vectors_.col(l).segment(j * d, d));
    total_weight += k;
  }
  if (!(total_weight > 0.0))
    throw DataError("extend_eigenfields: no in-sample neighbor within sqrt(eps)");

  for (int l = 0; l < retained_; ++l)
    acc.col(l) /= total_weight * spectrum_.values[l];
  return acc;
}

Eigen::VectorXd NystromExtender::extend(const SampledVectorField& field,
                                        const Eigen::VectorXd& y) const {
  return extend(field, y, query_frame(y));
}

Eigen::VectorXd NystromExtender::extend(const SampledVectorField& field,
                                        const Eigen::VectorXd& y,
                                        const Eigen::MatrixXd& frame_y) const {
  if (field.spectral.size() < retained_)
    throw DataError("extend: field is missing spectral coefficients");
  const Eigen::MatrixXd fields = extend_eigenfields(y, frame_y);
  Eigen::VectorXd tangent = Eigen::VectorXd::Zero(frames_.dim);
  for (int l = 0; l < retained_; ++l)
    tangent.noalias() += field.spectral[l] * fields.col(l);
  return frame_y * tangent;
}

Eigen::VectorXd extend_field(const PointCloud& cloud,
                             const TangentFrames& frames,
                             const AlignmentGraph& agraph,
                             const Spectrum& spectrum,
                             const SampledVectorField& field,
                             const Eigen::VectorXd& y, double alpha,
                             const ExtensionConfig& cfg) {
  NystromExtender extender(cloud, frames, agraph, spectrum, alpha, cfg);
  return extender.extend(field, y);
}

} // namespace vdm
