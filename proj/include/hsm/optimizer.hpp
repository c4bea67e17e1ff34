#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsm/losses.hpp"
#include "hsm/quadratic_model.hpp"
#include "hsm/surrogate.hpp"

namespace hsm {

enum class OuterMethod { nelder_mead, coordinate_fd };

std::string to_string(OuterMethod m);
OuterMethod outer_method_from_string(const std::string& name);

struct SolveOptions {
  OuterMethod method = OuterMethod::nelder_mead;
  int max_iterations = 2000;   // per start
  double tolerance = 1e-12;    // absolute best-loss improvement over `stall_window` iterations
  int multistart = 5;
  double ridge = 1e-12;
  std::uint64_t seed = 0;
  int shock_degree = 1;
  double simplex_edge = 0.1;
  int stall_window = 20;
  double min_diameter = 1e-10;
  /// Optional lattice pre-scan over C whose best `multistart` points become extra starts.
  /// c0 takes scan_c0 cell midpoints of [0, T]; each higher coefficient takes scan_higher
  /// points of [-scan_range T, scan_range T]. scan_c0 = 0 disables the scan.
  int scan_c0 = 0;
  /// Extra user starts, each of length shock_degree + 1, tried after the constant shocks.
  std::vector<std::vector<double>> extra_starts;
  int scan_higher = 21;
  double scan_range = 2.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Raised when G + lambda I is numerically singular (condition estimate above 1e15).
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearSolution {
  Eigen::VectorXd xi;
  double h = 0.0;
  bool has_jump = false;
  /// Ridge-free model loss at (xi, h).
  double loss = 0.0;
  /// Norm of the ridge-free loss gradient in (xi, h).
  double gradient_norm = 0.0;
  double condition = 0.0;
};

/// Minimizer of loss + lambda |(xi, h)|^2 for the fixed shock `shock` (nullptr: no jump column).
LinearSolution solve_linear_subproblem(const QuadraticLossModel& model, const ShockParam* shock, double lambda);

struct FitResult {
  HsmParams theta;
  LossBreakdown loss;
  std::vector<double> loss_trace;  // best accepted phi(C) after each outer iteration
  int outer_iterations = 0;
  double wall_time_s = 0.0;
  bool converged = false;
};

/// Variable projection: outer search over the shock coefficients of phi(C) = min_{xi,h} L.
FitResult optimize_shock(const QuadraticLossModel& model, const SolveOptions& opts);

/// Polynomial least squares on the same loss, no jump.
FitResult fit_psm_baseline(const QuadraticLossModel& model, const SolveOptions& opts = {});
/// Convenience form: weighted polynomial least squares of `truth` on `grid` with order-k cubature.
FitResult fit_psm_baseline(const GroundTruth& truth, const TensorGrid& grid, int k, double ridge = 1e-12);

}  // namespace hsm
