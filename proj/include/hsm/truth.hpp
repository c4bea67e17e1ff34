#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsm/multiindex_grid.hpp"
#include "hsm/surrogate.hpp"

namespace hsm {

enum class TruthFamily { shifted_sine_reconstruction, transport_analytic, custom_sampled };

std::string to_string(TruthFamily f);

/// Jump of the data written in surrogate form: g = smooth + height * H_shock.
struct JumpStructure {
  double height = 0.0;
  ShockParam shock;
};

/// Reference data on (-1, 1) x (0, T) for the built-in experiments.
///
/// shifted sine:  g = sin(w x - f(t)) + h* H_{s*}(x, t), f(t) = sum_k f_k t^k.
/// transport:     u = u0(x - v t), u0(x) = sin(w x) + h* 1{x < x0}.
/// custom:        a value table on the nodes of a tensor grid.
class GroundTruth {
 public:
  static GroundTruth shifted_sine(double frequency, double height, std::vector<double> f_coeffs, ShockParam shock);
  static GroundTruth transport(double frequency, double height, double x0, double velocity, double T);
  /// Values must be ordered like grid.points. Evaluation is only defined at those nodes.
  static GroundTruth custom_sampled(TensorGrid grid, Eigen::VectorXd values, std::optional<JumpStructure> jump,
                                    double T);

  TruthFamily family() const { return family_; }
  double T() const { return T_; }
  bool analytic() const { return family_ != TruthFamily::custom_sampled; }

  double operator()(double x, double t) const;
  /// Continuous remainder in surrogate form (g minus its jump part). Analytic families only.
  double smooth(double x, double t) const;
  /// Jump structure as a time graph; empty when there is no jump or it is not a graph t = s(x).
  const std::optional<JumpStructure>& jump() const { return jump_; }

  /// Times in (0, T) where t -> g(x, t) jumps.
  std::vector<double> time_breakpoints(double x) const;
  /// Points in (-1, 1) where x -> g(x, t) jumps.
  std::vector<double> space_breakpoints(double t) const;

  // Parameters of the analytic families.
  double frequency() const { return frequency_; }
  double height() const { return height_; }
  double x0() const { return x0_; }
  double velocity() const { return velocity_; }
  const std::vector<double>& f_coeffs() const { return f_coeffs_; }

 private:
  TruthFamily family_ = TruthFamily::shifted_sine_reconstruction;
  double T_ = 1.0;
  double frequency_ = 5.0;
  double height_ = 0.0;
  double x0_ = 0.0;
  double velocity_ = 0.0;
  std::vector<double> f_coeffs_;
  std::optional<JumpStructure> jump_;
  ShockParam data_shock_;  // shifted-sine jump location
  TensorGrid table_grid_;
  Eigen::VectorXd table_;
};

}  // namespace hsm
