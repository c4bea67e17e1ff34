#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hsm/grid1d.hpp"

namespace hsm {

/// Full tensor (l-infinity) multi-index set with per-axis degree bounds,
/// enumerated lexicographically with the first axis most significant.
class MultiIndexSet {
 public:
  MultiIndexSet() = default;
  explicit MultiIndexSet(std::vector<int> degrees);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  /// Largest per-axis degree.
  int max_degree() const;

  /// The k-th multi-index.
  std::vector<int> operator[](std::size_t k) const;
  /// Inverse of operator[]; throws std::out_of_range for tuples outside the set.
  std::size_t index_of(std::span<const int> alpha) const;

  /// Number of entries along each axis (degree + 1).
  std::vector<std::size_t> extents() const;

 private:
  std::vector<int> degrees_;
  std::size_t size_ = 0;
};

/// A_{n,d}: all d-tuples with max entry <= n.
MultiIndexSet multi_index_set(int n, int d);
/// Anisotropic variant, one bound per axis.
MultiIndexSet multi_index_set(std::vector<int> degrees);

/// Tensor product of 1D quadrature grids. Point k pairs with multi-index k.
struct TensorGrid {
  std::vector<Grid1D> axes;
  MultiIndexSet index_set;
  Eigen::MatrixXd points;   // size() x dim()
  Eigen::VectorXd weights;  // product of per-axis weights

  std::size_t size() const { return index_set.size(); }
  std::size_t dim() const { return axes.size(); }
  std::vector<std::size_t> extents() const { return index_set.extents(); }
};

TensorGrid tensor_grid(std::vector<Grid1D> axes);

/// Applies `op` (rows x extent[axis]) along one axis of a tensor-shaped value
/// vector. The result has extent[axis] replaced by op.rows().
Eigen::VectorXd apply_along_axis(std::span<const std::size_t> extents, std::size_t axis,
                                 const Eigen::MatrixXd& op, const Eigen::VectorXd& values);

}  // namespace hsm
