#include "hsm/truth.hpp"

#include <cmath>
#include <stdexcept>

#include "hsm/quadrature.hpp"

namespace hsm {

std::string to_string(TruthFamily f) {
  switch (f) {
    case TruthFamily::shifted_sine_reconstruction:
      return "shifted-sine-reconstruction";
    case TruthFamily::transport_analytic:
      return "transport-analytic";
    case TruthFamily::custom_sampled:
      return "custom-sampled";
  }
  return "unknown";
}

GroundTruth GroundTruth::shifted_sine(double frequency, double height, std::vector<double> f_coeffs, ShockParam shock) {
  if (shock.d != 1) throw std::invalid_argument("shifted sine truth: only d = 1");
  GroundTruth g;
  g.family_ = TruthFamily::shifted_sine_reconstruction;
  g.T_ = shock.T;
  g.frequency_ = frequency;
  g.height_ = height;
  g.f_coeffs_ = std::move(f_coeffs);
  g.data_shock_ = shock;
  if (height != 0.0) g.jump_ = JumpStructure{height, std::move(shock)};
  return g;
}

GroundTruth GroundTruth::transport(double frequency, double height, double x0, double velocity, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("transport truth: need T > 0");
  GroundTruth g;
  g.family_ = TruthFamily::transport_analytic;
  g.T_ = T;
  g.frequency_ = frequency;
  g.height_ = height;
  g.x0_ = x0;
  g.velocity_ = velocity;
  if (height != 0.0 && velocity != 0.0) {
    // Characteristic t = (x - x0) / v. For v > 0 the raised side x - v t < x0
    // is t > s(x), where H_s = 0, so the surrogate height is negative.
    Eigen::VectorXd c(2);
    c << -x0 / velocity, 1.0 / velocity;
    g.jump_ = JumpStructure{velocity > 0.0 ? -height : height, ShockParam(1, 1, T, c)};
  }
  return g;
}

GroundTruth GroundTruth::custom_sampled(TensorGrid grid, Eigen::VectorXd values, std::optional<JumpStructure> jump,
                                        double T) {
  if (static_cast<std::size_t>(values.size()) != grid.size())
    throw std::invalid_argument("custom truth: table size does not match grid");
  GroundTruth g;
  g.family_ = TruthFamily::custom_sampled;
  g.T_ = T;
  g.table_grid_ = std::move(grid);
  g.table_ = std::move(values);
  g.jump_ = std::move(jump);
  return g;
}

double GroundTruth::smooth(double x, double t) const {
  switch (family_) {
    case TruthFamily::shifted_sine_reconstruction: {
      double f = 0.0;
      for (std::size_t k = f_coeffs_.size(); k-- > 0;) f = f * t + f_coeffs_[k];
      return std::sin(frequency_ * x - f);
    }
    case TruthFamily::transport_analytic: {
      const double base = std::sin(frequency_ * (x - velocity_ * t));
      if (velocity_ > 0.0) return base + height_;
      if (velocity_ < 0.0) return base;
      return base + (x < x0_ ? height_ : 0.0);
    }
    case TruthFamily::custom_sampled:
      break;
  }
  throw std::logic_error("smooth part is not available for sampled data");
}

double GroundTruth::operator()(double x, double t) const {
  switch (family_) {
    case TruthFamily::shifted_sine_reconstruction:
      return smooth(x, t) + height_ * heaviside_eval(data_shock_, x, t);
    case TruthFamily::transport_analytic: {
      const double xi = x - velocity_ * t;
      return std::sin(frequency_ * xi) + (xi < x0_ ? height_ : 0.0);
    }
    case TruthFamily::custom_sampled: {
      const Eigen::Index cols = table_grid_.points.cols();
      if (cols != 2) throw std::logic_error("custom truth: evaluation needs a 2D table");
      for (Eigen::Index k = 0; k < table_grid_.points.rows(); ++k)
        if (std::abs(table_grid_.points(k, 0) - x) <= 1e-12 && std::abs(table_grid_.points(k, 1) - t) <= 1e-12)
          return table_(k);
      throw std::out_of_range("custom truth: point is not a table node");
    }
  }
  return 0.0;
}

std::vector<double> GroundTruth::time_breakpoints(double x) const {
  std::vector<double> out;
  if (height_ == 0.0) return out;
  double tb = -1.0;
  if (family_ == TruthFamily::shifted_sine_reconstruction)
    tb = shock_eval(data_shock_, x);
  else if (family_ == TruthFamily::transport_analytic && velocity_ != 0.0)
    tb = (x - x0_) / velocity_;
  if (tb > 0.0 && tb < T_) out.push_back(tb);
  return out;
}

std::vector<double> GroundTruth::space_breakpoints(double t) const {
  std::vector<double> out;
  if (height_ == 0.0) return out;
  if (family_ == TruthFamily::shifted_sine_reconstruction) {
    std::vector<double> c(data_shock_.coefficients.data(),
                          data_shock_.coefficients.data() + data_shock_.coefficients.size());
    c[0] -= t;
    return polynomial_roots_in(c, -1.0, 1.0);
  }
  if (family_ == TruthFamily::transport_analytic) {
    const double xb = x0_ + velocity_ * t;
    if (xb > -1.0 && xb < 1.0) out.push_back(xb);
  }
  return out;
}

}  // namespace hsm
