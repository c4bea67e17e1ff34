#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hsm/grid1d.hpp"
#include "hsm/multiindex_grid.hpp"

namespace hsm {

/// Roots of P_{n+1} by Newton iteration from Chebyshev points, rescaled to [a, b].
/// Throws std::invalid_argument for n < 0 or a >= b and std::runtime_error if
/// Newton fails to converge.
Grid1D legendre_grid_1d(int n, double a = -1.0, double b = 1.0);

enum class Basis { canonical, chebyshev, lagrange };

/// T_k(x) by the three-term recurrence.
double chebyshev_1d(int k, double x);
/// T_0(x), ..., T_n(x).
Eigen::VectorXd chebyshev_all(int n, double x);
/// Product of T_{alpha_i}(x_i). Coordinates may exceed [-1, 1] by 1e-12 (clamped).
double chebyshev_eval(std::span<const int> alpha, std::span<const double> point);
double canonical_eval(std::span<const int> alpha, std::span<const double> point);
/// Barycentric (second form) cardinal function j of `grid`, evaluated at x.
double lagrange_eval_1d(const Grid1D& grid, std::size_t j, double x);
/// All cardinal functions of `grid` at x.
Eigen::VectorXd lagrange_all_1d(const Grid1D& grid, double x);

/// Entry (k, alpha) = basis_alpha(points.row(k)). For the Lagrange basis the
/// nodes come from `lagrange_grid`, whose index set must equal `index_set`.
Eigen::MatrixXd vandermonde(const Eigen::MatrixXd& points, const MultiIndexSet& index_set,
                            Basis basis, const TensorGrid* lagrange_grid = nullptr);

/// 1D Chebyshev Vandermonde on arbitrary points of [a, b] (affinely mapped to [-1, 1]).
Eigen::MatrixXd chebyshev_vandermonde_1d(std::span<const double> points, int n, double a,
                                         double b);

/// (i, j) = L_j'(x_i).
Eigen::MatrixXd diff_matrix_1d(const Grid1D& grid);
/// Dense |grid| x |grid| derivative along `axis`.
Eigen::MatrixXd diff_matrix_tensor(const TensorGrid& grid, std::size_t axis);
/// Matrix-free equivalent of diff_matrix_tensor(grid, axis) * values.
Eigen::VectorXd apply_diff(const TensorGrid& grid, std::size_t axis, const Eigen::VectorXd& values);

}  // namespace hsm
