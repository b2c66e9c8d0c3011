#pragma once

#include <Eigen/Core>

#include "vdm/alignment.hpp"
#include "vdm/kernel.hpp"
#include "vdm/local_pca.hpp"
#include "vdm/point_cloud.hpp"
#include "vdm/spectral.hpp"

namespace vdm {

/// A vector field observed on the sample, in frame coordinates:
/// coeffs(i) = O_i^T (ambient vector at x_i). spectral[l] is the expansion
/// coefficient a_l on the right eigenvector basis w_l (D-orthonormal).
struct SampledVectorField {
  Eigen::VectorXd coeffs;   // length n*d
  Eigen::VectorXd spectral; // a_l, one per computed eigenpair
};

struct ExtensionConfig {
  double delta = 0.05;  // conditioning cutoff on |lambda_l|
  double eps_pca = 0.0; // local-PCA scale for query frames
  KernelSpec kernel_pca = KernelSpec::gaussian();
  KernelSpec kernel_w = KernelSpec::gaussian();
};

/// Preprocessed out-of-sample extension context. The spectrum must come from
/// the operator built on agraph with the given alpha; query weights reuse the
/// training scale sqrt(eps) stored in agraph.
class NystromExtender {
public:
  NystromExtender(const PointCloud& cloud, const TangentFrames& frames,
                  const AlignmentGraph& agraph, const Spectrum& spectrum,
                  double alpha, ExtensionConfig cfg);

  /// Projects an ambient field (n x p, one vector per row) onto the frames and
  /// expands it over the computed eigen-vector-fields.
  SampledVectorField project_field(const Eigen::MatrixXd& ambient) const;

  /// Local PCA frame at an out-of-sample point, using in-sample neighbors only.
  Eigen::MatrixXd query_frame(const Eigen::VectorXd& y) const;

  /// Extensions v~_l(y) of the retained eigen-vector-fields, as columns of a
  /// d x m(delta) matrix of coefficients in the basis frame_y.
  Eigen::MatrixXd extend_eigenfields(const Eigen::VectorXd& y,
                                     const Eigen::MatrixXd& frame_y) const;

  /// Ambient extension of the field at y; the result lies in span(O_y).
  Eigen::VectorXd extend(const SampledVectorField& field,
                         const Eigen::VectorXd& y) const;
  Eigen::VectorXd extend(const SampledVectorField& field,
                         const Eigen::VectorXd& y,
                         const Eigen::MatrixXd& frame_y) const;

  int retained() const { return retained_; }

private:
  const PointCloud& cloud_;
  const TangentFrames& frames_;
  const Spectrum& spectrum_;
  ExtensionConfig cfg_;
  double radius_w_;               // sqrt(eps) from the alignment graph
  Eigen::VectorXd density_alpha_; // deg(j)^alpha, query-weight normalizer
  Eigen::MatrixXd right_vectors_; // w_l as columns, for retained l
  int retained_ = 0;
};

/// One-shot extension matching the pipeline defaults.
Eigen::VectorXd extend_field(const PointCloud& cloud,
                             const TangentFrames& frames,
                             const AlignmentGraph& agraph,
                             const Spectrum& spectrum,
                             const SampledVectorField& field,
                             const Eigen::VectorXd& y, double alpha,
                             const ExtensionConfig& cfg);

} // namespace vdm
