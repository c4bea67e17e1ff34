#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace hsm {

/// Gauss-Legendre nodes and weights of degree n (n+1 points) on [a, b].
struct Grid1D {
  int degree = 0;
  double a = -1.0;
  double b = 1.0;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  /// Barycentric weights, normalized to max |w| = 1.
  Eigen::VectorXd bary;

  std::size_t size() const { return static_cast<std::size_t>(nodes.size()); }
  double length() const { return b - a; }
};

}  // namespace hsm
