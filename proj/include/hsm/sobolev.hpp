#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hsm/multiindex_grid.hpp"

namespace hsm {

/// Sobolev cubature matrix W^k = sum_{|beta|_1 <= k} (D^beta)^T diag(w) D^beta.
struct SobolevWeights {
  int order = 0;
  Eigen::MatrixXd matrix;
  /// Per-node cubature weights of the underlying grid (the k = 0 diagonal).
  Eigen::VectorXd node_weights;

  bool diagonal() const { return order == 0; }
  Eigen::Index size() const { return node_weights.size(); }
};

/// Product of per-axis differentiation matrices with powers beta_i.
Eigen::MatrixXd beta_diff_operator(const TensorGrid& grid, std::span<const int> beta);

SobolevWeights sobolev_weight_matrix(const TensorGrid& grid, int k);

/// u^T W^k u.
double sobolev_norm_sq(const Eigen::VectorXd& values, const SobolevWeights& w);

/// (W^k)_{i,j} for i in rows, j in cols.
Eigen::MatrixXd submatrix(const SobolevWeights& w, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols);

/// r^T (W^k)_{S,S} r for a residual r indexed by the ordered subset S.
double restricted_quadratic_form(const SobolevWeights& w, std::span<const std::size_t> subset,
                                 const Eigen::VectorXd& residual);

}  // namespace hsm
