#include "hsm/losses.hpp"

#include <algorithm>
#include <stdexcept>

#include "hsm/quadrature.hpp"
#include "hsm/spectral.hpp"

namespace hsm {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_1d(const HsmParams& theta, const char* who) {
  theta.validate();
  if (theta.d != 1) throw std::invalid_argument(std::string(who) + ": only d = 1 is supported");
}

double tau_of(double t, double T) { return std::clamp(2.0 * t / T - 1.0, -1.0, 1.0); }

// Chebyshev time coefficients of t -> Q(x, t) for fixed x.
Eigen::VectorXd column_coeffs(const HsmParams& theta, double x) {
  const int px = theta.degrees[0], pt = theta.degrees[1];
  Eigen::Map<const RowMat> xi(theta.xi.data(), px + 1, pt + 1);
  return xi.transpose() * chebyshev_all(px, std::clamp(x, -1.0, 1.0));
}

// Chebyshev space coefficients of x -> Q(x, t) for fixed t.
Eigen::VectorXd row_coeffs(const HsmParams& theta, double t) {
  const int px = theta.degrees[0], pt = theta.degrees[1];
  Eigen::Map<const RowMat> xi(theta.xi.data(), px + 1, pt + 1);
  return xi * chebyshev_all(pt, tau_of(t, theta.T));
}

double jump_at(const HsmParams& theta, double x, double t) {
  double v = 0.0;
  for (std::size_t s = 0; s < theta.l(); ++s)
    v += theta.h(static_cast<Eigen::Index>(s)) * heaviside_eval(theta.shocks[s], x, t);
  return v;
}

// Cuts of [0, T] along the time line through x: shocks and data jumps.
std::vector<double> time_cuts(const HsmParams& theta, const GroundTruth& truth, double x) {
  std::vector<double> cuts = truth.time_breakpoints(x);
  for (const auto& s : theta.shocks) cuts.push_back(shock_eval(s, x));
  return cuts;
}

std::vector<double> space_cuts(const HsmParams& theta, const GroundTruth& truth, double t) {
  std::vector<double> cuts = truth.space_breakpoints(t);
  for (const auto& s : theta.shocks) {
    std::vector<double> c(s.coefficients.data(), s.coefficients.data() + s.coefficients.size());
    c[0] -= t;
    for (double r : polynomial_roots_in(c, -1.0, 1.0)) cuts.push_back(r);
  }
  return cuts;
}

double column_sq_error(const HsmParams& theta, const GroundTruth& truth, double x, int npts) {
  const Eigen::VectorXd u = column_coeffs(theta, x);
  const int pt = theta.degrees[1];
  const auto cuts = time_cuts(theta, truth, x);
  return integrate_pieces(
      [&](double t) {
        const double q = u.dot(chebyshev_all(pt, tau_of(t, theta.T)));
        const double r = q + jump_at(theta, x, t) - truth(x, t);
        return r * r;
      },
      0.0, theta.T, cuts, npts);
}

}  // namespace

std::string to_string(SplitCubature c) { return c == SplitCubature::nodal ? "nodal" : "shock_fitted"; }

SplitCubature split_cubature_from_string(const std::string& name) {
  if (name == "nodal") return SplitCubature::nodal;
  if (name == "shock_fitted") return SplitCubature::shock_fitted;
  throw std::invalid_argument("unknown split cubature '" + name + "' (expected nodal or shock_fitted)");
}

LossBreakdown LossBreakdown::of(double pde, double boundary, double initial, double reconstruction) {
  LossBreakdown b;
  b.pde = pde;
  b.boundary = boundary;
  b.initial = initial;
  b.reconstruction = reconstruction;
  b.total = pde + boundary + initial + reconstruction;
  return b;
}

int fitted_rule_points(int n) { return n + 16; }

LossBreakdown reconstruction_loss(const HsmParams& theta, const GroundTruth& truth, const TensorGrid& grid, int k,
                                  SplitCubature cubature) {
  if (k < 0) throw std::invalid_argument("reconstruction_loss: k must be >= 0");
  if (cubature == SplitCubature::nodal) {
    if (k == 0) {
      SobolevWeights w;
      w.order = 0;
      w.node_weights = grid.weights;
      return reconstruction_loss(theta, truth, grid, w);
    }
    return reconstruction_loss(theta, truth, grid, sobolev_weight_matrix(grid, k));
  }
  require_1d(theta, "reconstruction_loss");
  if (k != 0) throw std::invalid_argument("reconstruction_loss: shock-fitted cubature supports k = 0 only");
  const Grid1D& gx = grid.axes.at(0);
  const int npts = fitted_rule_points(std::max(theta.degrees[1], grid.axes.at(1).degree));
  double total = 0.0;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    total += gx.weights(ii) * column_sq_error(theta, truth, gx.nodes(ii), npts);
  }
  return LossBreakdown::of(0.0, 0.0, 0.0, total);
}

LossBreakdown reconstruction_loss(const HsmParams& theta, const GroundTruth& truth, const TensorGrid& grid,
                                  const SobolevWeights& weights) {
  require_1d(theta, "reconstruction_loss");
  if (grid.dim() != 2 || weights.size() != static_cast<Eigen::Index>(grid.size()))
    throw std::invalid_argument("reconstruction_loss: grid and weights do not match");
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd r = hsm_on_grid(theta, grid);
  for (Eigen::Index k = 0; k < n; ++k) r(k) -= truth(grid.points(k, 0), grid.points(k, 1));

  double total = 0.0;
  if (weights.diagonal()) {
    total = r.cwiseAbs2().dot(weights.node_weights);
  } else if (theta.l() == 0) {
    total = r.dot(weights.matrix * r);
  } else if (theta.l() == 1) {
    const auto part = partition_grid(grid, theta.shocks[0]);
    Eigen::VectorXd rl(static_cast<Eigen::Index>(part.left.size())), rr(static_cast<Eigen::Index>(part.right.size()));
    for (std::size_t i = 0; i < part.left.size(); ++i) rl(static_cast<Eigen::Index>(i)) = r(static_cast<Eigen::Index>(part.left[i]));
    for (std::size_t i = 0; i < part.right.size(); ++i) rr(static_cast<Eigen::Index>(i)) = r(static_cast<Eigen::Index>(part.right[i]));
    total = restricted_quadratic_form(weights, part.left, rl) + restricted_quadratic_form(weights, part.right, rr);
  } else {
    throw std::invalid_argument("reconstruction_loss: k > 0 supports at most one jump");
  }
  return LossBreakdown::of(0.0, 0.0, 0.0, std::max(total, 0.0));
}

Eigen::VectorXd shock_line_vector(const ShockParam& s, double v, const TensorGrid& grid) {
  if (s.d != 1 || grid.dim() != 2) throw std::invalid_argument("shock_line_vector: only d = 1 is supported");
  const Grid1D& gx = grid.axes[0];
  const Grid1D& gt = grid.axes[1];
  const auto nt = static_cast<Eigen::Index>(gt.size());
  Eigen::VectorXd sigma = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(gx.size()); ++i) {
    const double x = gx.nodes(i);
    const double si = shock_eval(s, x);
    if (!(si >= 0.0 && si <= s.T)) continue;
    const double factor = (v * shock_derivative(s, x) - 1.0) * gx.weights(i);
    sigma.segment(i * nt, nt) = factor * lagrange_all_1d(gt, si);
  }
  return sigma;
}

Eigen::VectorXd pde_residual_vector(const HsmParams& theta, double v, const TensorGrid& grid) {
  require_1d(theta, "pde_loss_transport");
  if (grid.dim() != 2) throw std::invalid_argument("pde_loss_transport: grid must be space x time");
  const Eigen::VectorXd q = polynomial_on_grid(theta, grid);
  Eigen::VectorXd r = (apply_diff(grid, 1, q) + v * apply_diff(grid, 0, q)).cwiseProduct(grid.weights);
  for (std::size_t s = 0; s < theta.l(); ++s)
    r += theta.h(static_cast<Eigen::Index>(s)) * shock_line_vector(theta.shocks[s], v, grid);
  return r;
}

double pde_loss_transport(const HsmParams& theta, double v, const TensorGrid& grid, const Grid1D& spatial_grid) {
  if (grid.dim() != 2 || spatial_grid.size() != grid.axes[0].size())
    throw std::invalid_argument("pde_loss_transport: spatial grid must be the first grid axis");
  return pde_residual_vector(theta, v, grid).squaredNorm();
}

double boundary_loss(const HsmParams& theta, const GroundTruth& truth, const Grid1D& time_grid,
                     SplitCubature cubature) {
  require_1d(theta, "boundary_loss");
  double total = 0.0;
  for (const double xb : {-1.0, 1.0}) {
    const Eigen::VectorXd u = column_coeffs(theta, xb);
    auto residual = [&](double t) {
      return u.dot(chebyshev_all(theta.degrees[1], tau_of(t, theta.T))) + jump_at(theta, xb, t) - truth(xb, t);
    };
    if (cubature == SplitCubature::nodal) {
      for (Eigen::Index j = 0; j < time_grid.nodes.size(); ++j) {
        const double r = residual(time_grid.nodes(j));
        total += time_grid.weights(j) * r * r;
      }
    } else {
      const auto cuts = time_cuts(theta, truth, xb);
      const int npts = fitted_rule_points(std::max(theta.degrees[1], time_grid.degree));
      total += integrate_pieces(
          [&](double t) {
            const double r = residual(t);
            return r * r;
          },
          0.0, theta.T, cuts, npts);
    }
  }
  return total;
}

double initial_loss(const HsmParams& theta, const GroundTruth& truth, const Grid1D& spatial_grid, int k,
                    SplitCubature cubature) {
  require_1d(theta, "initial_loss");
  if (k < 0) throw std::invalid_argument("initial_loss: k must be >= 0");
  const Eigen::VectorXd w = row_coeffs(theta, 0.0);
  const int px = theta.degrees[0];
  auto residual = [&](double x) {
    return w.dot(chebyshev_all(px, std::clamp(x, -1.0, 1.0))) + jump_at(theta, x, 0.0) - truth(x, 0.0);
  };
  if (cubature == SplitCubature::shock_fitted) {
    if (k != 0) throw std::invalid_argument("initial_loss: shock-fitted cubature supports k = 0 only");
    const auto cuts = space_cuts(theta, truth, 0.0);
    return integrate_pieces(
        [&](double x) {
          const double r = residual(x);
          return r * r;
        },
        -1.0, 1.0, cuts, fitted_rule_points(std::max(px, spatial_grid.degree)));
  }
  const auto n = static_cast<Eigen::Index>(spatial_grid.size());
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) r(i) = residual(spatial_grid.nodes(i));
  if (k == 0) return r.cwiseAbs2().dot(spatial_grid.weights);

  const TensorGrid line = tensor_grid({spatial_grid});
  const SobolevWeights wk = sobolev_weight_matrix(line, k);
  if (theta.l() == 0) return std::max(r.dot(wk.matrix * r), 0.0);
  if (theta.l() > 1) throw std::invalid_argument("initial_loss: k > 0 supports at most one jump");
  std::vector<std::size_t> left, right;
  for (Eigen::Index i = 0; i < n; ++i)
    (heaviside_eval(theta.shocks[0], spatial_grid.nodes(i), 0.0) ? left : right).push_back(static_cast<std::size_t>(i));
  auto gather = [&](const std::vector<std::size_t>& idx) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = r(static_cast<Eigen::Index>(idx[i]));
    return out;
  };
  return std::max(restricted_quadratic_form(wk, left, gather(left)) + restricted_quadratic_form(wk, right, gather(right)), 0.0);
}

LossBreakdown total_transport_loss(const HsmParams& theta, const GroundTruth& truth, const TensorGrid& grid, double v,
                                   SplitCubature cubature) {
  if (grid.dim() != 2) throw std::invalid_argument("total_transport_loss: grid must be space x time");
  const double pde = pde_loss_transport(theta, v, grid, grid.axes[0]);
  const double bnd = boundary_loss(theta, truth, grid.axes[1], cubature);
  const double ini = initial_loss(theta, truth, grid.axes[0], 0, cubature);
  return LossBreakdown::of(pde, bnd, ini, 0.0);
}

}  // namespace hsm
