#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsm/multiindex_grid.hpp"

namespace hsm {

/// Shock graph t = s(x), a canonical-basis polynomial over A_{m,d}.
struct ShockParam {
  int m = 0;
  int d = 1;
  double T = 1.0;
  Eigen::VectorXd coefficients;  // ordered as multi_index_set(m, d)

  ShockParam() = default;
  ShockParam(int degree, int dim, double horizon, Eigen::VectorXd coeffs);

  /// Constant shock s(x) = c0 of degree m.
  static ShockParam constant(double c0, int degree, int dim, double horizon);

  std::size_t num_coefficients() const { return static_cast<std::size_t>(coefficients.size()); }
};

double shock_eval(const ShockParam& s, std::span<const double> x);
inline double shock_eval(const ShockParam& s, double x) { return shock_eval(s, std::span<const double>(&x, 1)); }
/// Partial derivative of s along spatial axis `axis`, from the coefficients.
double shock_derivative(const ShockParam& s, std::span<const double> x, std::size_t axis = 0);
inline double shock_derivative(const ShockParam& s, double x) {
  return shock_derivative(s, std::span<const double>(&x, 1), 0);
}

/// 1 if t <= s(x), else 0.
int heaviside_eval(const ShockParam& s, std::span<const double> x, double t);
inline int heaviside_eval(const ShockParam& s, double x, double t) {
  return heaviside_eval(s, std::span<const double>(&x, 1), t);
}

/// theta = {xi, h, C}: psi = Q_xi + sum_i h_i H_{s_i} on (-1, 1)^d x (0, T).
/// Q_xi is a tensor Chebyshev polynomial; the time axis (last) is mapped
/// affinely from [0, T] to [-1, 1] before evaluation.
struct HsmParams {
  std::vector<int> degrees;  // per axis, spatial axes first, time last
  int m = 0;
  int d = 1;
  double T = 1.0;
  Eigen::VectorXd xi;
  Eigen::VectorXd h;
  std::vector<ShockParam> shocks;

  /// Zero polynomial of the given per-axis degrees with `l` zero jumps on constant shocks.
  static HsmParams zeros(std::vector<int> degrees, int shock_degree, double horizon, int l = 1);

  std::size_t l() const { return shocks.size(); }
  MultiIndexSet index_set() const { return MultiIndexSet(degrees); }
  /// Throws std::invalid_argument if the block sizes are inconsistent.
  void validate() const;
};

/// Q_xi at (x..., t) with no jump part.
double polynomial_eval(const HsmParams& theta, std::span<const double> point);
/// psi_theta at (x..., t). Throws std::domain_error outside the closed box.
double hsm_eval(const HsmParams& theta, std::span<const double> point);

/// Q_xi sampled on the tensor product of per-axis point lists (lexicographic, first axis major).
Eigen::VectorXd polynomial_on_axes(const HsmParams& theta, const std::vector<std::vector<double>>& axis_points);
/// Q_xi at the points of a tensor grid on (-1, 1)^d x (0, T).
Eigen::VectorXd polynomial_on_grid(const HsmParams& theta, const TensorGrid& grid);
/// sum_i h_i H_{s_i} at the points of `grid`.
Eigen::VectorXd jump_on_grid(const HsmParams& theta, const TensorGrid& grid);
/// psi_theta at the grid points.
Eigen::VectorXd hsm_on_grid(const HsmParams& theta, const TensorGrid& grid);

/// Left (t <= s(x)) and right (t > s(x)) node sets.
struct GridPartition {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  ShockParam shock;
};

/// Last grid axis is time.
GridPartition partition_grid(const TensorGrid& grid, const ShockParam& s);

/// values - sum_i h_i H_{s_i}(grid points).
Eigen::VectorXd stitch(const Eigen::VectorXd& values, const HsmParams& theta, const TensorGrid& grid);

/// JSON document {n, m, d, T, l, xi, h, C}; numbers with 17 significant digits.
/// `n` is an integer for isotropic degrees, otherwise the per-axis list.
std::string to_json(const HsmParams& theta);
HsmParams hsm_params_from_json(const std::string& text);

}  // namespace hsm
