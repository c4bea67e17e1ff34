#include "hsm/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hsm/spectral.hpp"

namespace hsm {

namespace {

constexpr double kBoxSlack = 1e-12;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write_array(std::ostringstream& os, const Eigen::VectorXd& v) {
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << fmt17(v(i));
  os << ']';
}

double to_unit(double t, double a, double b) {
  const double tau = (2.0 * t - a - b) / (b - a);
  if (!(tau >= -1.0 - kBoxSlack && tau <= 1.0 + kBoxSlack))
    throw std::domain_error("hsm: point outside the closed space-time box");
  return std::clamp(tau, -1.0, 1.0);
}

}  // namespace

ShockParam::ShockParam(int degree, int dim, double horizon, Eigen::VectorXd coeffs)
    : m(degree), d(dim), T(horizon), coefficients(std::move(coeffs)) {
  if (m < 0 || d < 1) throw std::invalid_argument("ShockParam: need m >= 0, d >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("ShockParam: need T > 0");
  if (static_cast<std::size_t>(coefficients.size()) != multi_index_set(m, d).size())
    throw std::invalid_argument("ShockParam: coefficient count must be (m+1)^d");
}

ShockParam ShockParam::constant(double c0, int degree, int dim, double horizon) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(multi_index_set(degree, dim).size()));
  c(0) = c0;
  return ShockParam(degree, dim, horizon, std::move(c));
}

double shock_eval(const ShockParam& s, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(s.d)) throw std::invalid_argument("shock_eval: dimension mismatch");
  if (s.d == 1) {
    // Horner.
    double v = 0.0;
    for (Eigen::Index k = s.coefficients.size(); k-- > 0;) v = v * x[0] + s.coefficients(k);
    return v;
  }
  const auto idx = multi_index_set(s.m, s.d);
  double v = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto alpha = idx[k];
    v += s.coefficients(static_cast<Eigen::Index>(k)) * canonical_eval(alpha, x);
  }
  return v;
}

double shock_derivative(const ShockParam& s, std::span<const double> x, std::size_t axis) {
  if (x.size() != static_cast<std::size_t>(s.d) || axis >= x.size())
    throw std::invalid_argument("shock_derivative: dimension mismatch");
  const auto idx = multi_index_set(s.m, s.d);
  double v = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto alpha = idx[k];
    if (alpha[axis] == 0) continue;
    const double factor = alpha[axis];
    alpha[axis] -= 1;
    v += s.coefficients(static_cast<Eigen::Index>(k)) * factor * canonical_eval(alpha, x);
  }
  return v;
}

int heaviside_eval(const ShockParam& s, std::span<const double> x, double t) {
  return t <= shock_eval(s, x) ? 1 : 0;
}

HsmParams HsmParams::zeros(std::vector<int> degrees, int shock_degree, double horizon, int l) {
  HsmParams p;
  p.degrees = std::move(degrees);
  p.d = static_cast<int>(p.degrees.size()) - 1;
  p.m = shock_degree;
  p.T = horizon;
  p.xi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.index_set().size()));
  p.h = Eigen::VectorXd::Zero(l);
  for (int i = 0; i < l; ++i) p.shocks.push_back(ShockParam::constant(0.5 * horizon, shock_degree, p.d, horizon));
  p.validate();
  return p;
}

void HsmParams::validate() const {
  if (degrees.size() < 2 || static_cast<int>(degrees.size()) != d + 1)
    throw std::invalid_argument("HsmParams: need d + 1 per-axis degrees");
  if (!(T > 0.0)) throw std::invalid_argument("HsmParams: need T > 0");
  if (static_cast<std::size_t>(xi.size()) != index_set().size())
    throw std::invalid_argument("HsmParams: |xi| must equal prod(n_i + 1)");
  if (static_cast<std::size_t>(h.size()) != shocks.size())
    throw std::invalid_argument("HsmParams: |h| must equal the number of shocks");
  for (const auto& s : shocks)
    if (s.d != d || s.m != m) throw std::invalid_argument("HsmParams: shock layout mismatch");
}

double polynomial_eval(const HsmParams& theta, std::span<const double> point) {
  const auto dims = theta.degrees.size();
  if (point.size() != dims) throw std::invalid_argument("hsm_eval: point dimension mismatch");
  std::vector<Eigen::VectorXd> tabs(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    const bool time = i + 1 == dims;
    const double u = time ? to_unit(point[i], 0.0, theta.T) : to_unit(point[i], -1.0, 1.0);
    tabs[i] = chebyshev_all(theta.degrees[i], u);
  }
  const auto idx = theta.index_set();
  double v = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto alpha = idx[k];
    double term = theta.xi(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < dims; ++i) term *= tabs[i](alpha[i]);
    v += term;
  }
  return v;
}

double hsm_eval(const HsmParams& theta, std::span<const double> point) {
  double v = polynomial_eval(theta, point);
  const auto x = point.first(point.size() - 1);
  const double t = point.back();
  for (std::size_t i = 0; i < theta.l(); ++i) v += theta.h(static_cast<Eigen::Index>(i)) * heaviside_eval(theta.shocks[i], x, t);
  return v;
}

Eigen::VectorXd polynomial_on_axes(const HsmParams& theta, const std::vector<std::vector<double>>& axis_points) {
  const auto dims = theta.degrees.size();
  if (axis_points.size() != dims) throw std::invalid_argument("polynomial_on_axes: dimension mismatch");
  // Contract the coefficient tensor one axis at a time: C -> V_i C along axis i.
  Eigen::VectorXd values = theta.xi;
  std::vector<std::size_t> ext = theta.index_set().extents();
  for (std::size_t i = 0; i < dims; ++i) {
    const bool time = i + 1 == dims;
    const Eigen::MatrixXd v = chebyshev_vandermonde_1d(axis_points[i], theta.degrees[i], time ? 0.0 : -1.0,
                                                       time ? theta.T : 1.0);
    values = apply_along_axis(ext, i, v, values);
    ext[i] = axis_points[i].size();
  }
  return values;
}

Eigen::VectorXd polynomial_on_grid(const HsmParams& theta, const TensorGrid& grid) {
  std::vector<std::vector<double>> pts(grid.dim());
  for (std::size_t i = 0; i < grid.dim(); ++i)
    pts[i].assign(grid.axes[i].nodes.data(), grid.axes[i].nodes.data() + grid.axes[i].nodes.size());
  return polynomial_on_axes(theta, pts);
}

Eigen::VectorXd jump_on_grid(const HsmParams& theta, const TensorGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto d = grid.dim() - 1;
  Eigen::VectorXd j = Eigen::VectorXd::Zero(n);
  std::vector<double> x(d);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < d; ++i) x[i] = grid.points(k, static_cast<Eigen::Index>(i));
    const double t = grid.points(k, static_cast<Eigen::Index>(d));
    for (std::size_t s = 0; s < theta.l(); ++s)
      j(k) += theta.h(static_cast<Eigen::Index>(s)) * heaviside_eval(theta.shocks[s], x, t);
  }
  return j;
}

Eigen::VectorXd hsm_on_grid(const HsmParams& theta, const TensorGrid& grid) {
  return polynomial_on_grid(theta, grid) + jump_on_grid(theta, grid);
}

GridPartition partition_grid(const TensorGrid& grid, const ShockParam& s) {
  if (grid.dim() != static_cast<std::size_t>(s.d) + 1)
    throw std::invalid_argument("partition_grid: grid must be d spatial axes plus time");
  GridPartition p;
  p.shock = s;
  const auto d = grid.dim() - 1;
  std::vector<double> x(d);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    for (std::size_t i = 0; i < d; ++i) x[i] = grid.points(row, static_cast<Eigen::Index>(i));
    if (heaviside_eval(s, x, grid.points(row, static_cast<Eigen::Index>(d))) == 1)
      p.left.push_back(k);
    else
      p.right.push_back(k);
  }
  return p;
}

Eigen::VectorXd stitch(const Eigen::VectorXd& values, const HsmParams& theta, const TensorGrid& grid) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) throw std::invalid_argument("stitch: length mismatch");
  return values - jump_on_grid(theta, grid);
}

std::string to_json(const HsmParams& theta) {
  theta.validate();
  std::ostringstream os;
  bool iso = true;
  for (int n : theta.degrees) iso = iso && n == theta.degrees.front();
  os << "{\"n\": ";
  if (iso) {
    os << theta.degrees.front();
  } else {
    os << '[';
    for (std::size_t i = 0; i < theta.degrees.size(); ++i) os << (i ? ", " : "") << theta.degrees[i];
    os << ']';
  }
  os << ", \"m\": " << theta.m << ", \"d\": " << theta.d << ", \"T\": " << fmt17(theta.T)
     << ", \"l\": " << theta.l() << ", \"xi\": ";
  write_array(os, theta.xi);
  os << ", \"h\": ";
  write_array(os, theta.h);
  os << ", \"C\": [";
  for (std::size_t i = 0; i < theta.shocks.size(); ++i) {
    os << (i ? ", " : "");
    write_array(os, theta.shocks[i].coefficients);
  }
  os << "]}";
  return os.str();
}

HsmParams hsm_params_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  HsmParams p;
  p.d = j.at("d").get<int>();
  p.m = j.at("m").get<int>();
  p.T = j.at("T").get<double>();
  if (j.at("n").is_array())
    p.degrees = j.at("n").get<std::vector<int>>();
  else
    p.degrees.assign(static_cast<std::size_t>(p.d) + 1, j.at("n").get<int>());
  const auto xi = j.at("xi").get<std::vector<double>>();
  p.xi = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
  const auto h = j.at("h").get<std::vector<double>>();
  p.h = Eigen::Map<const Eigen::VectorXd>(h.data(), static_cast<Eigen::Index>(h.size()));
  for (const auto& c : j.at("C")) {
    const auto cv = c.get<std::vector<double>>();
    p.shocks.emplace_back(p.m, p.d, p.T, Eigen::Map<const Eigen::VectorXd>(cv.data(), static_cast<Eigen::Index>(cv.size())));
  }
  if (j.at("l").get<std::size_t>() != p.shocks.size()) throw std::invalid_argument("HsmParams: l does not match C");
  p.validate();
  return p;
}

}  // namespace hsm
