#include "vdm/embedding.hpp"

#include <cmath>
#include <iostream>
#include <vector>

#include "vdm/errors.hpp"
#include "vdm/threading.hpp"

namespace vdm {

namespace {

bool is_integer(double t) { return std::floor(t) == t; }

// (x y)^t without sign surprises: for integer t use the exact integer-power
// path, otherwise require a positive base.
double signed_pow(double base, double t) {
  if (is_integer(t)) {
    double acc = 1.0;
    double b = base;
    long long e = static_cast<long long>(t);
    while (e > 0) {
      if (e & 1) acc *= b;
      b *= b;
      e >>= 1;
    }
    return acc;
  }
  return std::pow(base, t);
}

} // namespace

int vdm_truncation_count(const Eigen::VectorXd& values, double t, double delta) {
  if (values.size() == 0) throw DataError("vdm_truncation_count: empty spectrum");
  const double top = std::abs(values[0]);
  if (!(top > 0.0)) throw DataError("vdm_truncation_count: lambda_1 is zero");
  if (!(t > 0.0)) throw DataError("vdm_truncation_count: t must be positive");
  int m = 0;
  while (m < values.size() &&
         std::pow(std::abs(values[m]) / top, 2.0 * t) > delta)
    ++m;
  if (m == 0)
    throw DataError("vdm_truncation_count: delta >= 1 retains nothing");
  if (!is_integer(t)) {
    for (int l = 0; l < m; ++l)
      if (values[l] <= 0.0)
        throw DataError(
            "vdm_truncation_count: non-integer t requires all retained "
            "eigenvalues positive");
  }
  return m;
}

VdmEmbedding vdm_embed(const Spectrum& spectrum, double t, double delta,
                       bool normalized, const Eigen::VectorXd& degrees) {
  const int m = vdm_truncation_count(spectrum.values, t, delta);
  const int n = spectrum.n;
  const int d = spectrum.d;
  if (normalized && degrees.size() != n)
    throw DataError("vdm_embed: degree vector size mismatch");

  const int width = m * (m + 1) / 2;
  // Pair weights c_lr (lambda_l lambda_r)^t, l-major over l <= r.
  Eigen::VectorXd factor(width);
  {
    int c = 0;
    for (int l = 0; l < m; ++l)
      for (int r = l; r < m; ++r, ++c)
        factor[c] = (l == r ? 1.0 : std::sqrt(2.0)) *
                    signed_pow(spectrum.values[l] * spectrum.values[r], t);
  }

  VdmEmbedding emb;
  emb.t = t;
  emb.delta = delta;
  emb.m = m;
  emb.normalized = normalized;
  emb.coords.resize(n, width);
  parallel_for(0, n, [&](int i) {
    Eigen::MatrixXd vi(d, m);
    for (int l = 0; l < m; ++l) vi.col(l) = spectrum.vectors.col(l).segment(i * d, d);
    const Eigen::MatrixXd gram = vi.transpose() * vi; // <v_l(i), v_r(i)>
    int c = 0;
    for (int l = 0; l < m; ++l)
      for (int r = l; r < m; ++r, ++c)
        emb.coords(i, c) = factor[c] * gram(l, r);
    if (normalized) emb.coords.row(i) /= degrees[i];
  });
  if (!emb.coords.allFinite())
    throw NumericalError("vdm_embed: non-finite embedding coordinates");
  return emb;
}

double vdm_distance(const VdmEmbedding& emb, int i, int j) {
  return (emb.coords.row(i) - emb.coords.row(j)).norm();
}

double vdm_angular_distance(const VdmEmbedding& emb, int i, int j) {
  const double ni = emb.coords.row(i).norm();
  const double nj = emb.coords.row(j).norm();
  if (!(ni > 0.0) || !(nj > 0.0))
    throw DataError("vdm_angular_distance: zero-norm embedding point");
  return (emb.coords.row(i) / ni - emb.coords.row(j) / nj).norm();
}

namespace {

void check_connected(const AlignmentGraph& agraph) {
  std::vector<char> seen(agraph.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (const auto& [j, e] : agraph.adjacency[i]) {
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  if (reached != agraph.n) {
    std::cerr << "warning: graph is disconnected (" << reached << " of "
              << agraph.n << " vertices reachable); refusing per-component "
              << "diffusion map\n";
    throw DataError("dm_eigensolve: disconnected graph");
  }
}

} // namespace

Spectrum dm_eigensolve(const AlignmentGraph& agraph, int m, std::uint64_t seed,
                       const SolverOptions& opts) {
  const int n = agraph.n;
  if (m < 1 || m > n) throw DataError("dm_eigensolve: m must lie in [1, n]");
  check_connected(agraph);

  Eigen::VectorXd inv_sqrt = agraph.degrees.array().rsqrt();

  EigenPairs pairs;
  if (n <= opts.dense_threshold) {
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(n, n);
    for (const auto& edge : agraph.edges) {
      const double s = edge.w * inv_sqrt[edge.i] * inv_sqrt[edge.j];
      sym(edge.i, edge.j) = s;
      sym(edge.j, edge.i) = s;
    }
    pairs = dense_topk(sym, m);
  } else {
    pairs = lanczos_topk(
        [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
          y.setZero(n);
          for (const auto& edge : agraph.edges) {
            const double s = edge.w * inv_sqrt[edge.i] * inv_sqrt[edge.j];
            y[edge.i] += s * x[edge.j];
            y[edge.j] += s * x[edge.i];
          }
        },
        n, m, seed, opts);
  }

  Spectrum spectrum;
  spectrum.values = std::move(pairs.values);
  spectrum.vectors = std::move(pairs.vectors);
  spectrum.residuals = std::move(pairs.residuals);
  spectrum.n = n;
  spectrum.d = 1;
  spectrum.degrees = agraph.degrees;
  return spectrum;
}

DmEmbedding dm_embed(const Spectrum& spectrum, double t, double delta) {
  if (spectrum.d != 1) throw DataError("dm_embed: expected a scalar spectrum");
  if (spectrum.size() == 0) throw DataError("dm_embed: empty spectrum");
  if (!(t > 0.0)) throw DataError("dm_embed: t must be positive");
  const double top = std::abs(spectrum.values[0]);
  if (!(top > 0.0)) throw DataError("dm_embed: mu_1 is zero");

  int m = 0;
  while (m < spectrum.size() &&
         std::pow(std::abs(spectrum.values[m]) / top, t) > delta)
    ++m;
  if (m == 0) throw DataError("dm_embed: delta >= 1 retains nothing");
  if (!is_integer(t)) {
    for (int l = 0; l < m; ++l)
      if (spectrum.values[l] <= 0.0)
        throw DataError(
            "dm_embed: non-integer t requires all retained eigenvalues "
            "positive");
  }

  DmEmbedding emb;
  emb.t = t;
  emb.delta = delta;
  emb.m = m;
  emb.mu = spectrum.values.head(m);
  emb.phi.resize(spectrum.n, m);
  for (int l = 0; l < m; ++l) emb.phi.col(l) = spectrum.right_eigenvector(l);
  emb.coords.resize(spectrum.n, m);
  for (int l = 0; l < m; ++l)
    emb.coords.col(l) = signed_pow(emb.mu[l], t) * emb.phi.col(l);
  if (!emb.coords.allFinite())
    throw NumericalError("dm_embed: non-finite embedding coordinates");
  return emb;
}

DmEmbedding dm_embed(const AlignmentGraph& agraph, double t, double delta,
                     int num_eigs, std::uint64_t seed) {
  const int m = std::min(num_eigs, agraph.n);
  return dm_embed(dm_eigensolve(agraph, m, seed), t, delta);
}

double dm_distance(const DmEmbedding& emb, int i, int j) {
  return (emb.coords.row(i) - emb.coords.row(j)).norm();
}

} // namespace vdm
