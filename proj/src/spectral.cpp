#include "vdm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vdm/errors.hpp"

namespace vdm {

namespace {

// |lambda| descending; ties (equal magnitude to a relative 1e-12, e.g. exact
// +-pairs) put the positive eigenvalue first, then keep the original order.
std::vector<int> magnitude_order(const Eigen::VectorXd& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  const double tol = 1e-12 * scale;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (std::abs(ma - mb) > tol) return ma > mb;
    if ((values[a] > 0.0) != (values[b] > 0.0)) return values[a] > 0.0;
    return false;
  });
  return order;
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int size) {
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v[i] = 2.0 * uniform01(rng) - 1.0;
  return v;
}

// Symmetric tridiagonal eigendecomposition via a dense solve; sweep
// dimensions stay small so this is never a bottleneck.
void tridiag_eig(const std::vector<double>& alpha, const std::vector<double>& beta,
                 Eigen::VectorXd& theta, Eigen::MatrixXd& s) {
  const int k = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < k) {
      t(i, i + 1) = beta[i];
      t(i + 1, i) = beta[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
  theta = eig.eigenvalues();
  s = eig.eigenvectors();
}

} // namespace

Eigen::VectorXd Spectrum::right_eigenvector(int l) const {
  Eigen::VectorXd w = vectors.col(l);
  for (int i = 0; i < n; ++i)
    w.segment(i * d, d) /= std::sqrt(degrees[i]);
  return w;
}

std::vector<int> MultiplicityProfile::counts() const {
  std::vector<int> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(g.count);
  return out;
}

EigenPairs dense_topk(const Eigen::MatrixXd& sym, int m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success)
    throw NumericalError("dense_topk: eigendecomposition failed");
  const auto order = magnitude_order(eig.eigenvalues());
  EigenPairs out;
  out.values.resize(m);
  out.vectors.resize(sym.rows(), m);
  out.residuals.resize(m);
  for (int k = 0; k < m; ++k) {
    const int src = order[k];
    out.values[k] = eig.eigenvalues()[src];
    out.vectors.col(k) = eig.eigenvectors().col(src);
    out.residuals[k] =
        (sym * out.vectors.col(k) - out.values[k] * out.vectors.col(k)).norm();
  }
  return out;
}

EigenPairs lanczos_topk(const ApplyFn& apply, int size, int m,
                        std::uint64_t seed, const SolverOptions& opts) {
  if (m < 1 || m > size) throw DataError("lanczos_topk: m out of range");

  std::mt19937_64 rng(seed);
  Eigen::MatrixXd locked(size, 0);
  std::vector<double> locked_values;
  std::vector<double> locked_residuals;

  // Orthogonalize v against the locked pairs and the current basis (two
  // passes of classical Gram-Schmidt keep the basis orthogonal to working
  // precision).
  auto orthogonalize = [&](Eigen::VectorXd& v, const Eigen::MatrixXd& basis,
                           int cols) {
    for (int pass = 0; pass < 2; ++pass) {
      if (locked.cols() > 0)
        v.noalias() -= locked * (locked.transpose() * v);
      if (cols > 0)
        v.noalias() -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * v);
    }
  };

  double last_unlocked_bound = std::numeric_limits<double>::infinity();
  bool extremes_converged = false;

  auto emit_topk = [&]() {
    Eigen::VectorXd lv =
        Eigen::Map<Eigen::VectorXd>(locked_values.data(), locked_values.size());
    const auto order = magnitude_order(lv);
    EigenPairs out;
    out.values.resize(m);
    out.vectors.resize(size, m);
    out.residuals.resize(m);
    for (int k = 0; k < m; ++k) {
      out.values[k] = locked_values[order[k]];
      out.vectors.col(k) = locked.col(order[k]);
      out.residuals[k] = locked_residuals[order[k]];
    }
    return out;
  };

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const int room = size - static_cast<int>(locked.cols());
    if (room <= 0) break;
    const int dim = std::min(opts.sweep_dim, room);

    Eigen::MatrixXd basis(size, dim + 1);
    std::vector<double> alpha, beta;
    alpha.reserve(dim);
    beta.reserve(dim);

    Eigen::VectorXd v = random_unit_vector(rng, size);
    orthogonalize(v, basis, 0);
    if (v.norm() < 1e-10) break; // locked span covers the whole space
    v.normalize();
    basis.col(0) = v;

    Eigen::VectorXd w(size);
    int steps = 0;
    bool enough = false;
    Eigen::VectorXd theta;
    Eigen::MatrixXd s;

    while (steps < dim && !enough) {
      apply(basis.col(steps), w);
      const double a = basis.col(steps).dot(w);
      alpha.push_back(a);
      w.noalias() -= a * basis.col(steps);
      if (steps > 0) w.noalias() -= beta.back() * basis.col(steps - 1);
      orthogonalize(w, basis, steps + 1);
      const double b = w.norm();
      ++steps;
      if (b < 1e-13) {
        beta.push_back(0.0);
        break; // invariant subspace exhausted; harvest and restart
      }
      beta.push_back(b);
      basis.col(steps) = w / b;

      if (steps % opts.check_every == 0 || steps == dim) {
        tridiag_eig(alpha, beta, theta, s);
        int converged = 0;
        for (int k = 0; k < steps; ++k)
          if (std::abs(beta[steps - 1] * s(steps - 1, k)) <= opts.lock_tol)
            ++converged;
        const bool ends_ok =
            std::abs(beta[steps - 1] * s(steps - 1, 0)) <= opts.lock_tol &&
            std::abs(beta[steps - 1] * s(steps - 1, steps - 1)) <= opts.lock_tol;
        const int needed = std::max(m - static_cast<int>(locked.cols()), 0);
        if (ends_ok && converged >= std::min(needed + 2, steps)) enough = true;
      }
    }

    tridiag_eig(alpha, beta, theta, s);
    const double beta_last = beta.empty() ? 0.0 : beta.back();

    // Harvest converged Ritz pairs; track the largest |theta| left behind.
    std::vector<int> converged_idx;
    double unlocked_bound = 0.0;
    bool max_end_ok = false, min_end_ok = false;
    for (int k = 0; k < steps; ++k) {
      const double bound = std::abs(beta_last * s(steps - 1, k));
      if (bound <= opts.lock_tol) {
        converged_idx.push_back(k);
        if (k == steps - 1) max_end_ok = true;
        if (k == 0) min_end_ok = true;
      } else {
        unlocked_bound = std::max(unlocked_bound, std::abs(theta[k]) + bound);
      }
    }
    extremes_converged = max_end_ok && min_end_ok;
    // When both ends converged, they are the extremes of the spectrum this
    // sweep probed (the operator deflated by the locks made BEFORE it).
    const double probed_extreme_abs =
        steps > 0 ? std::max(std::abs(theta[0]), std::abs(theta[steps - 1]))
                  : 0.0;

    double largest_new_lock = 0.0;
    for (int k : converged_idx) {
      Eigen::VectorXd y = basis.leftCols(steps) * s.col(k).head(steps);
      // Re-orthogonalize against the locked set; a vanishing remainder means
      // this pair duplicates an already locked one.
      orthogonalize(y, basis, 0);
      const double norm = y.norm();
      if (norm < 0.5) continue;
      y /= norm;
      apply(y, w);
      const double lambda = y.dot(w);
      const double resid = (w - lambda * y).norm();
      if (resid > 10.0 * opts.lock_tol) {
        unlocked_bound = std::max(unlocked_bound, std::abs(lambda) + resid);
        continue;
      }
      locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
      locked.col(locked.cols() - 1) = y;
      locked_values.push_back(lambda);
      locked_residuals.push_back(resid);
      largest_new_lock = std::max(largest_new_lock, std::abs(lambda));
    }
    last_unlocked_bound = unlocked_bound;

    if (static_cast<int>(locked.cols()) >= m && extremes_converged) {
      Eigen::VectorXd lv = Eigen::Map<Eigen::VectorXd>(locked_values.data(),
                                                       locked_values.size());
      const auto order = magnitude_order(lv);
      const double threshold = std::abs(lv[order[m - 1]]);
      // A pair locked this sweep at or above the cut may hide an exactly
      // degenerate twin that only the NEXT fresh start can reveal, so the
      // bound is trusted only when this sweep contributed nothing up there.
      const bool top_unchanged = largest_new_lock < threshold - 1e-11;
      if (top_unchanged && unlocked_bound <= threshold + 1e-11 &&
          probed_extreme_abs <= threshold + 1e-11)
        return emit_topk();
    }
  }

  // The locked subspace may have exhausted the whole operator.
  if (static_cast<int>(locked.cols()) >= size && static_cast<int>(locked.cols()) >= m)
    return emit_topk();

  std::ostringstream msg;
  msg << "lanczos_topk: failed to converge " << m << " eigenpairs in "
      << opts.max_sweeps << " sweeps (locked " << locked.cols()
      << ", best attained residual bound " << last_unlocked_bound << ")";
  throw NumericalError(msg.str());
}

Eigen::MatrixXd dense_sym_matrix(const VdmOperator& op) {
  const int d = op.d;
  Eigen::VectorXd inv_sqrt = op.deg_alpha.array().rsqrt();
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(op.size(), op.size());
  for (const auto& blk : op.blocks) {
    const double s = blk.w * inv_sqrt[blk.i] * inv_sqrt[blk.j];
    sym.block(blk.i * d, blk.j * d, d, d) = s * blk.rot;
    sym.block(blk.j * d, blk.i * d, d, d) = s * blk.rot.transpose();
  }
  return sym;
}

Spectrum eigensolve(const VdmOperator& op, int m, std::uint64_t seed,
                    const SolverOptions& opts) {
  if (m < 1 || m > op.size())
    throw DataError("eigensolve: m must lie in [1, n*d]");

  EigenPairs pairs;
  if (op.size() <= opts.dense_threshold) {
    pairs = dense_topk(dense_sym_matrix(op), m);
  } else {
    pairs = lanczos_topk(
        [&op](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
          y = apply_sym(op, x);
        },
        op.size(), m, seed, opts);
  }

  Spectrum spectrum;
  spectrum.values = std::move(pairs.values);
  spectrum.vectors = std::move(pairs.vectors);
  spectrum.residuals = std::move(pairs.residuals);
  spectrum.n = op.n;
  spectrum.d = op.d;
  spectrum.degrees = op.deg_alpha;
  return spectrum;
}

MultiplicityProfile detect_multiplicities(const Spectrum& spectrum, double tau) {
  if (spectrum.size() == 0)
    throw DataError("detect_multiplicities: empty spectrum");
  std::vector<double> values(spectrum.values.data(),
                             spectrum.values.data() + spectrum.size());
  std::sort(values.begin(), values.end(), std::greater<double>());
  const double scale =
      std::max(std::abs(spectrum.values[0]), 1e-15); // |lambda_1|

  MultiplicityProfile profile;
  profile.tau = tau;
  MultiplicityProfile::Group current{values[0], 1};
  for (std::size_t k = 1; k < values.size(); ++k) {
    if ((values[k - 1] - values[k]) / scale < tau) {
      ++current.count;
    } else {
      profile.groups.push_back(current);
      current = {values[k], 1};
    }
  }
  profile.groups.push_back(current);
  return profile;
}

Spectrum repair_degeneracy(const Spectrum& spectrum,
                           const std::vector<int>& group_sizes) {
  int total = 0;
  for (int g : group_sizes) {
    if (g < 1) throw DataError("repair_degeneracy: group sizes must be >= 1");
    total += g;
  }
  if (total > spectrum.size())
    throw DataError("repair_degeneracy: group sizes exceed the spectrum");

  Spectrum repaired = spectrum;
  int pos = 0;
  for (int g : group_sizes) {
    const double leader = repaired.values[pos];
    for (int k = pos; k < pos + g; ++k) repaired.values[k] = leader;
    pos += g;
  }
  return repaired;
}

} // namespace vdm
