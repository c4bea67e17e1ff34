#pragma once

// Reference integrals for the transport residual, built on the helpers in
// support.hpp and the coefficient layout of HsmParams.

#include <algorithm>
#include <cmath>

#include "hsm/multiindex_grid.hpp"
#include "hsm/surrogate.hpp"
#include "support.hpp"

namespace testing {

// Second kind Chebyshev U_k by its own recurrence; T_k' = k U_{k-1}.
inline double cheb_u(int k, double x) {
  if (k < 0) return 0.0;
  double a = 1.0, b = 2.0 * x;
  if (k == 0) return a;
  for (int i = 1; i < k; ++i) {
    const double c = 2.0 * x * b - a;
    a = b;
    b = c;
  }
  return b;
}

inline double cheb_t(int k, double x) { return std::cos(k * std::acos(std::clamp(x, -1.0, 1.0))); }

// (dQ/dt + v dQ/dx) at (x, t) straight from the coefficients.
inline double transport_operator(const hsm::HsmParams& p, double v, double x, double t) {
  const int nx = p.degrees[0], nt = p.degrees[1];
  const double tau = 2.0 * t / p.T - 1.0;
  double out = 0.0;
  for (int a = 0; a <= nx; ++a)
    for (int b = 0; b <= nt; ++b) {
      const double c = p.xi(a * (nt + 1) + b);
      const double dx = a * cheb_u(a - 1, x) * cheb_t(b, tau);
      const double dt = cheb_t(a, x) * b * cheb_u(b - 1, tau) * (2.0 / p.T);
      out += c * (dt + v * dx);
    }
  return out;
}

// Integral of (d_t + v d_x)(Q + h H_eps) against L_alpha, with H_eps the ramp of width eps.
inline Eigen::VectorXd mollified_residual(const hsm::HsmParams& p, double v, const hsm::TensorGrid& grid, double eps) {
  const auto& gx = grid.axes[0];
  const auto& gt = grid.axes[1];
  const auto nt = gt.nodes.size();
  const auto& s = p.shocks[0];
  const double h = p.h(0);
  const auto inner = golub_welsch(10);
  Eigen::VectorXd out(grid.size());
  for (Eigen::Index i = 0; i < gx.nodes.size(); ++i)
    for (Eigen::Index j = 0; j < nt; ++j) {
      auto line = [&](double x) {
        const double li = lagrange_product(gx.nodes, i, x);
        const double sx = hsm::shock_eval(s, x), ds = hsm::shock_derivative(s, x);
        double smooth = 0.0, jump = 0.0;
        for (std::size_t q = 0; q < inner.x.size(); ++q) {
          const double t = 0.5 * p.T * (inner.x[q] + 1.0);
          smooth += 0.5 * p.T * inner.w[q] * transport_operator(p, v, x, t) * lagrange_product(gt.nodes, j, t);
          const double tb = sx + 0.5 * eps * inner.x[q];
          jump += 0.5 * eps * inner.w[q] * lagrange_product(gt.nodes, j, tb);
        }
        return li * (smooth + h * (v * ds - 1.0) / eps * jump);
      };
      out(i * nt + j) = composite(line, -1.0, 1.0, 64);
    }
  return out;
}

}  // namespace testing
