#include "hsm/sobolev.hpp"

#include <stdexcept>

#include "hsm/spectral.hpp"

namespace hsm {

namespace {

// All beta in N^d with |beta|_1 <= k, in lexicographic order.
void enumerate_betas(std::size_t d, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == d) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (int b : cur) used += b;
  for (int b = 0; b + used <= k; ++b) {
    cur.push_back(b);
    enumerate_betas(d, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Eigen::MatrixXd beta_diff_operator(const TensorGrid& grid, std::span<const int> beta) {
  if (beta.size() != grid.dim()) throw std::invalid_argument("beta_diff_operator: dimension mismatch");
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd op = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t axis = 0; axis < beta.size(); ++axis) {
    if (beta[axis] < 0) throw std::invalid_argument("beta_diff_operator: negative order");
    if (beta[axis] == 0) continue;
    const Eigen::MatrixXd d = diff_matrix_tensor(grid, axis);
    for (int p = 0; p < beta[axis]; ++p) op = d * op;
  }
  return op;
}

SobolevWeights sobolev_weight_matrix(const TensorGrid& grid, int k) {
  if (k < 0) throw std::invalid_argument("sobolev_weight_matrix: negative orders are not supported");
  SobolevWeights w;
  w.order = k;
  w.node_weights = grid.weights;
  w.matrix = grid.weights.asDiagonal();
  if (k == 0) return w;

  std::vector<std::vector<int>> betas;
  std::vector<int> cur;
  enumerate_betas(grid.dim(), k, cur, betas);
  for (const auto& beta : betas) {
    bool zero = true;
    for (int b : beta) zero = zero && b == 0;
    if (zero) continue;
    const Eigen::MatrixXd db = beta_diff_operator(grid, beta);
    w.matrix.noalias() += db.transpose() * grid.weights.asDiagonal() * db;
  }
  w.matrix = 0.5 * (w.matrix + w.matrix.transpose()).eval();
  return w;
}

double sobolev_norm_sq(const Eigen::VectorXd& values, const SobolevWeights& w) {
  if (values.size() != w.size()) throw std::invalid_argument("sobolev_norm_sq: length mismatch");
  if (w.diagonal()) return (values.array().square() * w.node_weights.array()).sum();
  return values.dot(w.matrix * values);
}

Eigen::MatrixXd submatrix(const SobolevWeights& w, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) {
  const auto n = static_cast<std::size_t>(w.size());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= n) throw std::out_of_range("submatrix: row index out of range");
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] >= n) throw std::out_of_range("submatrix: column index out of range");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          w.matrix(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
    }
  }
  return out;
}

double restricted_quadratic_form(const SobolevWeights& w, std::span<const std::size_t> subset,
                                 const Eigen::VectorXd& residual) {
  if (static_cast<std::size_t>(residual.size()) != subset.size())
    throw std::invalid_argument("restricted_quadratic_form: length mismatch");
  if (w.diagonal()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
      acc += w.node_weights(static_cast<Eigen::Index>(subset[i])) * residual(static_cast<Eigen::Index>(i)) *
             residual(static_cast<Eigen::Index>(i));
    return acc;
  }
  return residual.dot(submatrix(w, subset, subset) * residual);
}

}  // namespace hsm
