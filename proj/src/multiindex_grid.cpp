#include "hsm/multiindex_grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hsm {

MultiIndexSet::MultiIndexSet(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw std::invalid_argument("multi-index set: dimension must be >= 1");
  size_ = 1;
  for (int n : degrees_) {
    if (n < 0) throw std::invalid_argument("multi-index set: degree must be >= 0");
    size_ *= static_cast<std::size_t>(n) + 1;
  }
}

int MultiIndexSet::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

std::vector<std::size_t> MultiIndexSet::extents() const {
  std::vector<std::size_t> e(degrees_.size());
  for (std::size_t i = 0; i < degrees_.size(); ++i) e[i] = static_cast<std::size_t>(degrees_[i]) + 1;
  return e;
}

std::vector<int> MultiIndexSet::operator[](std::size_t k) const {
  if (k >= size_) throw std::out_of_range("multi-index " + std::to_string(k) + " out of range");
  std::vector<int> alpha(degrees_.size());
  for (std::size_t i = degrees_.size(); i-- > 0;) {
    const auto extent = static_cast<std::size_t>(degrees_[i]) + 1;
    alpha[i] = static_cast<int>(k % extent);
    k /= extent;
  }
  return alpha;
}

std::size_t MultiIndexSet::index_of(std::span<const int> alpha) const {
  if (alpha.size() != degrees_.size()) throw std::out_of_range("multi-index has wrong dimension");
  std::size_t k = 0;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (alpha[i] < 0 || alpha[i] > degrees_[i]) throw std::out_of_range("multi-index outside set");
    k = k * (static_cast<std::size_t>(degrees_[i]) + 1) + static_cast<std::size_t>(alpha[i]);
  }
  return k;
}

MultiIndexSet multi_index_set(int n, int d) {
  if (d < 1) throw std::invalid_argument("multi_index_set: d must be >= 1");
  if (n < 0) throw std::invalid_argument("multi_index_set: n must be >= 0");
  return MultiIndexSet(std::vector<int>(static_cast<std::size_t>(d), n));
}

MultiIndexSet multi_index_set(std::vector<int> degrees) { return MultiIndexSet(std::move(degrees)); }

TensorGrid tensor_grid(std::vector<Grid1D> axes) {
  if (axes.empty()) throw std::invalid_argument("tensor_grid: need at least one axis");
  std::vector<int> degrees;
  for (const auto& ax : axes) {
    if (ax.size() == 0) throw std::invalid_argument("tensor_grid: empty axis");
    degrees.push_back(static_cast<int>(ax.size()) - 1);
  }
  TensorGrid g;
  g.index_set = MultiIndexSet(degrees);
  g.axes = std::move(axes);
  const std::size_t n = g.index_set.size();
  const std::size_t d = g.axes.size();
  g.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  g.weights.resize(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto alpha = g.index_set[k];
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      g.points(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = g.axes[i].nodes(alpha[i]);
      w *= g.axes[i].weights(alpha[i]);
    }
    g.weights(static_cast<Eigen::Index>(k)) = w;
  }
  return g;
}

Eigen::VectorXd apply_along_axis(std::span<const std::size_t> extents, std::size_t axis,
                                 const Eigen::MatrixXd& op, const Eigen::VectorXd& values) {
  if (axis >= extents.size()) throw std::out_of_range("apply_along_axis: axis out of range");
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= extents[i];
  for (std::size_t i = axis + 1; i < extents.size(); ++i) inner *= extents[i];
  const auto mid = extents[axis];
  if (static_cast<std::size_t>(op.cols()) != mid ||
      static_cast<std::size_t>(values.size()) != outer * mid * inner)
    throw std::invalid_argument("apply_along_axis: shape mismatch");
  const auto out_mid = static_cast<std::size_t>(op.rows());
  Eigen::VectorXd out(static_cast<Eigen::Index>(outer * out_mid * inner));
  for (std::size_t o = 0; o < outer; ++o) {
    // Slab viewed as (mid x inner) column-major with stride `inner` between rows.
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> in(
        values.data() + o * mid * inner, static_cast<Eigen::Index>(mid),
        static_cast<Eigen::Index>(inner));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> res(
        out.data() + o * out_mid * inner, static_cast<Eigen::Index>(out_mid),
        static_cast<Eigen::Index>(inner));
    res.noalias() = op * in;
  }
  return out;
}

}  // namespace hsm
