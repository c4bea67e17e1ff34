#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hsm/grid1d.hpp"

namespace hsm {

/// Cached Gauss-Legendre rule with `npts` points on [-1, 1].
const Grid1D& reference_rule(int npts);

/// Sorted, de-duplicated interior breakpoints of [a, b] (points outside are dropped),
/// framed by a and b.
std::vector<double> split_points(double a, double b, std::span<const double> interior);

/// Sum over the pieces of [a, b] cut at `interior` of an npts-point Gauss rule.
double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> interior, int npts);

/// Calls visit(node, weight) for every node of the piecewise rule.
void for_each_piece_node(double a, double b, std::span<const double> interior, int npts,
                         const std::function<void(double, double)>& visit);

/// Real roots of the polynomial sum_k c_k x^k in (lo, hi), ascending.
std::vector<double> polynomial_roots_in(std::span<const double> coeffs, double lo, double hi);

}  // namespace hsm
