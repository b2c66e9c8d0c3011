#include "vdm/vdm_operator.hpp"

#include <cmath>
#include <string>

#include "vdm/errors.hpp"
#include "vdm/threading.hpp"

namespace vdm {

VdmOperator build_operator(const AlignmentGraph& agraph, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DataError("build_operator: alpha must lie in [0,1]");

  VdmOperator op;
  op.n = agraph.n;
  op.d = agraph.d;
  op.alpha = alpha;
  op.deg = agraph.degrees;

  for (int i = 0; i < op.n; ++i)
    if (!(op.deg[i] > 0.0))
      throw DataError("build_operator: isolated vertex " + std::to_string(i));

  Eigen::VectorXd deg_pow(op.n);
  for (int i = 0; i < op.n; ++i) deg_pow[i] = std::pow(op.deg[i], -alpha);

  op.blocks.reserve(agraph.edges.size());
  op.deg_alpha = Eigen::VectorXd::Zero(op.n);
  for (const auto& edge : agraph.edges) {
    const double w = edge.w * deg_pow[edge.i] * deg_pow[edge.j];
    op.blocks.push_back({edge.i, edge.j, w, edge.rot});
    op.deg_alpha[edge.i] += w;
    op.deg_alpha[edge.j] += w;
  }

  op.rows.resize(op.n);
  for (int b = 0; b < static_cast<int>(op.blocks.size()); ++b) {
    op.rows[op.blocks[b].i].push_back({op.blocks[b].j, b});
    op.rows[op.blocks[b].j].push_back({op.blocks[b].i, b});
  }

  const int d = op.d;
  op.row_ptr.assign(op.n + 1, 0);
  for (int i = 0; i < op.n; ++i)
    op.row_ptr[i + 1] = op.row_ptr[i] + static_cast<int>(op.rows[i].size());
  const int nnz = op.row_ptr[op.n];
  op.col_index.resize(nnz);
  op.entry_weight.resize(nnz);
  op.entry_rot.resize(static_cast<std::size_t>(nnz) * d * d);
  for (int i = 0; i < op.n; ++i) {
    int slot = op.row_ptr[i];
    for (const auto& [j, b] : op.rows[i]) {
      const auto& blk = op.blocks[b];
      op.col_index[slot] = j;
      op.entry_weight[slot] = blk.w;
      double* rot = &op.entry_rot[static_cast<std::size_t>(slot) * d * d];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          rot[r * d + c] = (i == blk.i) ? blk.rot(r, c) : blk.rot(c, r);
      ++slot;
    }
  }
  return op;
}

namespace {

// out(i) = sum_j w~_ij O_ij (scale_j v(j)), one row at a time in a fixed order.
template <int D>
void transport_rows(const VdmOperator& op, const double* v,
                    const double* col_scale, double* out) {
  const int d = (D > 0) ? D : op.d;
  parallel_for(0, op.n, [&](int i) {
    double acc[16] = {0.0};
    double* accp = acc;
    std::vector<double> dyn;
    if (d > 16) {
      dyn.assign(d, 0.0);
      accp = dyn.data();
    }
    const int begin = op.row_ptr[i];
    const int end = op.row_ptr[i + 1];
    for (int e = begin; e < end; ++e) {
      const int j = op.col_index[e];
      const double s = op.entry_weight[e] * col_scale[j];
      const double* rot = &op.entry_rot[static_cast<std::size_t>(e) * d * d];
      const double* vj = v + static_cast<std::ptrdiff_t>(j) * d;
      for (int r = 0; r < d; ++r) {
        double dot = 0.0;
        for (int c = 0; c < d; ++c) dot += rot[r * d + c] * vj[c];
        accp[r] += s * dot;
      }
    }
    for (int r = 0; r < d; ++r) out[static_cast<std::ptrdiff_t>(i) * d + r] = accp[r];
  });
}

void weighted_transport_sum(const VdmOperator& op, const Eigen::VectorXd& v,
                            const Eigen::VectorXd& col_scale,
                            Eigen::VectorXd& out) {
  switch (op.d) {
    case 1: transport_rows<1>(op, v.data(), col_scale.data(), out.data()); break;
    case 2: transport_rows<2>(op, v.data(), col_scale.data(), out.data()); break;
    case 3: transport_rows<3>(op, v.data(), col_scale.data(), out.data()); break;
    case 4: transport_rows<4>(op, v.data(), col_scale.data(), out.data()); break;
    case 5: transport_rows<5>(op, v.data(), col_scale.data(), out.data()); break;
    default: transport_rows<0>(op, v.data(), col_scale.data(), out.data()); break;
  }
}

} // namespace

Eigen::VectorXd apply_avg(const VdmOperator& op, const Eigen::VectorXd& v) {
  if (v.size() != op.size()) throw DataError("apply_avg: dimension mismatch");
  Eigen::VectorXd out(op.size());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.n);
  weighted_transport_sum(op, v, ones, out);
  for (int i = 0; i < op.n; ++i) out.segment(i * op.d, op.d) /= op.deg_alpha[i];
  return out;
}

Eigen::VectorXd apply_sym(const VdmOperator& op, const Eigen::VectorXd& v) {
  if (v.size() != op.size()) throw DataError("apply_sym: dimension mismatch");
  Eigen::VectorXd inv_sqrt = op.deg_alpha.array().rsqrt();
  Eigen::VectorXd out(op.size());
  weighted_transport_sum(op, v, inv_sqrt, out);
  for (int i = 0; i < op.n; ++i) out.segment(i * op.d, op.d) *= inv_sqrt[i];
  return out;
}

} // namespace vdm
