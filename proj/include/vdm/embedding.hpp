#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "vdm/alignment.hpp"
#include "vdm/spectral.hpp"

namespace vdm {

/// Truncated vector diffusion mapping. Point i gets the m(m+1)/2 coordinates
/// c_lr (lambda_l lambda_r)^t <v_l(i), v_r(i)> for l <= r, with c_lr = sqrt(2)
/// off the diagonal and 1 on it; the normalized variant divides point i's
/// coordinates by deg(i).
struct VdmEmbedding {
  double t = 0.0;
  double delta = 0.0;
  int m = 0;
  bool normalized = false;
  Eigen::MatrixXd coords; // n x m(m+1)/2, pair (l,r) stored l-major

  int n() const { return static_cast<int>(coords.rows()); }
  int embedded_dim() const { return static_cast<int>(coords.cols()); }
};

/// Diffusion-maps baseline. Coordinates are mu_l^t phi_l(i) for the retained
/// eigenpairs of A = Dinv W; the leading coordinate is constant, so the
/// effective embedded dimension is m - 1.
struct DmEmbedding {
  double t = 0.0;
  double delta = 0.0;
  int m = 0;
  Eigen::VectorXd mu;     // retained eigenvalues of A
  Eigen::MatrixXd phi;    // n x m right eigenvectors (phi_l = u_l / sqrt(deg))
  Eigen::MatrixXd coords; // n x m

  int n() const { return static_cast<int>(coords.rows()); }
  int embedded_dim() const { return m > 0 ? m - 1 : 0; }
};

/// Number of retained eigenvectors: the largest m with
/// (|lambda_m| / |lambda_1|)^(2t) > delta. Throws when delta >= 1 (nothing
/// retained) or when a non-integer t meets a retained negative eigenvalue.
int vdm_truncation_count(const Eigen::VectorXd& values, double t, double delta);

VdmEmbedding vdm_embed(const Spectrum& spectrum, double t, double delta,
                       bool normalized, const Eigen::VectorXd& degrees);

/// Euclidean distance between embedded points.
double vdm_distance(const VdmEmbedding& emb, int i, int j);

/// Distance between the normalized embeddings V_t(i)/||V_t(i)||; identical for
/// the plain and deg-normalized variants.
double vdm_angular_distance(const VdmEmbedding& emb, int i, int j);

/// Scalar spectrum of A = Dinv W via its symmetric conjugate. The returned
/// Spectrum has d = 1 and carries the raw degrees, so repair_degeneracy and
/// right_eigenvector apply unchanged. Throws DataError when the graph is
/// disconnected.
Spectrum dm_eigensolve(const AlignmentGraph& agraph, int m, std::uint64_t seed,
                       const SolverOptions& opts = {});

/// Diffusion mapping from a precomputed scalar spectrum; truncation keeps the
/// largest m with (|mu_m| / |mu_1|)^t > delta.
DmEmbedding dm_embed(const Spectrum& spectrum, double t, double delta);

/// Convenience overload running the eigensolver with default options.
DmEmbedding dm_embed(const AlignmentGraph& agraph, double t, double delta,
                     int num_eigs = 50, std::uint64_t seed = 0);

double dm_distance(const DmEmbedding& emb, int i, int j);

} // namespace vdm
