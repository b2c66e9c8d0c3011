#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "vdm/vdm_operator.hpp"

namespace vdm {

/// Partial eigendecomposition of a symmetric operator, ordered by |lambda|
/// descending (ties: positive first, then discovery order). Eigenvectors are
/// orthonormal columns; degrees allow right-eigenvector access for the
/// averaging operator: w_l = D^-1/2 v_l.
struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors; // (n*d) x m
  Eigen::VectorXd residuals;
  int n = 0;
  int d = 0;
  Eigen::VectorXd degrees; // deg_alpha of the operator the spectrum came from

  int size() const { return static_cast<int>(values.size()); }
  Eigen::VectorXd right_eigenvector(int l) const;
};

struct MultiplicityProfile {
  struct Group {
    double representative; // first (largest) eigenvalue of the group
    int count;
  };
  std::vector<Group> groups;
  double tau = 0.0;

  std::vector<int> counts() const;
};

struct SolverOptions {
  int dense_threshold = 3000; // use a dense solve up to this operator size
  int sweep_dim = 250;        // Krylov dimension per sweep
  int max_sweeps = 80;
  double lock_tol = 1e-10; // residual tolerance for accepting an eigenpair
  int check_every = 10;
};

using ApplyFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd residuals;
};

/// Top-m eigenpairs by |lambda| of a symmetric operator given only its action.
/// Lanczos with full reorthogonalization; converged pairs are locked and the
/// iteration restarts against them, which recovers multiple copies of
/// degenerate eigenvalues. Deterministic for a fixed seed.
EigenPairs lanczos_topk(const ApplyFn& apply, int size, int m,
                        std::uint64_t seed, const SolverOptions& opts = {});

/// Dense symmetric eigendecomposition restricted to the top m by |lambda|.
EigenPairs dense_topk(const Eigen::MatrixXd& sym, int m);

/// Top-m eigenpairs of S~_alpha. Uses the dense path for nd <= dense_threshold
/// and matrix-free Lanczos above it.
Spectrum eigensolve(const VdmOperator& op, int m, std::uint64_t seed,
                    const SolverOptions& opts = {});

/// Dense assembly of S~_alpha (intended for small operators).
Eigen::MatrixXd dense_sym_matrix(const VdmOperator& op);

/// Groups eigenvalues sorted descending by value: consecutive values join a
/// group when their relative gap is below tau.
MultiplicityProfile detect_multiplicities(const Spectrum& spectrum, double tau);

/// Replaces the eigenvalues inside each declared leading group by the group's
/// first eigenvalue (in the spectrum's stored order). Idempotent.
Spectrum repair_degeneracy(const Spectrum& spectrum,
                           const std::vector<int>& group_sizes);

} // namespace vdm
