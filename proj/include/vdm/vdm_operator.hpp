#pragma once

#include <vector>

#include <Eigen/Core>

#include "vdm/alignment.hpp"

namespace vdm {

/// Block-sparse nd x nd operator family: S_alpha with diagonal degree blocks
/// D_alpha. Each d x d block is stored once per undirected edge; the diagonal
/// blocks are zero. Vectors of length nd are read as n stacked d-vectors.
struct VdmOperator {
  struct Block {
    int i, j;            // i < j
    double w;            // alpha-normalized weight w_ij / (deg_i deg_j)^alpha
    Eigen::MatrixXd rot; // O_ij (transports j's coefficients into i's frame)
  };

  int n = 0;
  int d = 0;
  double alpha = 0.0;
  std::vector<Block> blocks;        // sorted by (i, j)
  Eigen::VectorXd deg;              // raw degrees of the alignment graph
  Eigen::VectorXd deg_alpha;        // degrees of the alpha-normalized weights
  std::vector<std::vector<std::pair<int, int>>> rows; // (neighbor, block idx)

  // Flat CSR-style layout of the same blocks for the matvec hot loop:
  // for each row i, entries [row_ptr[i], row_ptr[i+1]) hold the neighbor, the
  // scaled weight and a row-major d x d block (already transposed when the
  // stored edge points the other way).
  std::vector<int> row_ptr;
  std::vector<int> col_index;
  std::vector<double> entry_weight;
  std::vector<double> entry_rot; // d*d per entry, row-major

  int size() const { return n * d; }
};

/// Builds S_alpha = D^-alpha S D^-alpha and its degree vector, 0 <= alpha <= 1.
/// Throws DataError on an isolated vertex.
VdmOperator build_operator(const AlignmentGraph& agraph, double alpha);

/// Averaging action: out(i) = (1/deg_alpha(i)) sum_j w~_ij O_ij v(j).
Eigen::VectorXd apply_avg(const VdmOperator& op, const Eigen::VectorXd& v);

/// Symmetric action of S~_alpha = D_alpha^-1/2 S_alpha D_alpha^-1/2.
Eigen::VectorXd apply_sym(const VdmOperator& op, const Eigen::VectorXd& v);

} // namespace vdm
