#pragma once

#include <string>

#include <Eigen/Dense>

#include "hsm/multiindex_grid.hpp"
#include "hsm/sobolev.hpp"
#include "hsm/surrogate.hpp"
#include "hsm/truth.hpp"

namespace hsm {

/// How the split integrals over U- = {t <= s(x)} and U+ are discretized.
///
/// nodal:         partition the fixed cubature nodes by the shock (piecewise
///                constant in the shock coefficients).
/// shock_fitted:  cut each line integral at the shock and at the data's own
///                jumps, then apply a Gauss rule on every smooth piece
///                (continuous in the shock coefficients; needs analytic data).
enum class SplitCubature { nodal, shock_fitted };

std::string to_string(SplitCubature c);
SplitCubature split_cubature_from_string(const std::string& name);

struct LossBreakdown {
  double total = 0.0;
  double pde = 0.0;
  double boundary = 0.0;
  double initial = 0.0;
  double reconstruction = 0.0;

  static LossBreakdown of(double pde, double boundary, double initial, double reconstruction);
};

/// Points per smooth piece used by the shock-fitted rules for a polynomial of degree n.
int fitted_rule_points(int n);

/// (r-)^T W^{k-} r- + (r+)^T W^{k+} r+ with r- = T- xi + h - g(P-), r+ = T+ xi - g(P+).
/// Supports l <= 1 jumps for k > 0 and any l for k = 0.
LossBreakdown reconstruction_loss(const HsmParams& theta, const GroundTruth& truth, const TensorGrid& grid, int k = 0,
                                  SplitCubature cubature = SplitCubature::nodal);
/// Nodal variant with a precomputed Sobolev matrix for `grid`.
LossBreakdown reconstruction_loss(const HsmParams& theta, const GroundTruth& truth, const TensorGrid& grid,
                                  const SobolevWeights& weights);

/// SHOCK_alpha / h: (v s'(x_g) - 1) L_alpha(x_g, s(x_g)) w_g over spatial nodes with s(x_g) in [0, T].
Eigen::VectorXd shock_line_vector(const ShockParam& s, double v, const TensorGrid& grid);
/// SMOOTH_alpha + SHOCK_alpha for every node alpha of the space-time grid.
Eigen::VectorXd pde_residual_vector(const HsmParams& theta, double v, const TensorGrid& grid);
/// Sum of squared entries of pde_residual_vector. `spatial_grid` must be grid.axes[0].
double pde_loss_transport(const HsmParams& theta, double v, const TensorGrid& grid, const Grid1D& spatial_grid);

/// Dirichlet mismatch on x = -1 and x = +1, integrated over the time grid.
double boundary_loss(const HsmParams& theta, const GroundTruth& truth, const Grid1D& time_grid,
                     SplitCubature cubature = SplitCubature::nodal);
/// Initial-condition mismatch at t = 0 against truth(x, 0), split by the sign of s(x).
double initial_loss(const HsmParams& theta, const GroundTruth& truth, const Grid1D& spatial_grid, int k = 0,
                    SplitCubature cubature = SplitCubature::nodal);

/// PDE + boundary + initial terms for the 1D transport problem on `grid` (space axis first).
LossBreakdown total_transport_loss(const HsmParams& theta, const GroundTruth& truth, const TensorGrid& grid, double v,
                                   SplitCubature cubature = SplitCubature::nodal);

}  // namespace hsm
