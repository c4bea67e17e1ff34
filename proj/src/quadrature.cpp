#include "hsm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hsm/spectral.hpp"

namespace hsm {

const Grid1D& reference_rule(int npts) {
  if (npts < 1) throw std::invalid_argument("reference_rule: need at least one point");
  static std::mutex mu;
  static std::map<int, Grid1D> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, legendre_grid_1d(npts - 1)).first;
  return it->second;
}

std::vector<double> split_points(double a, double b, std::span<const double> interior) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double p : interior)
    if (p > a && p < b) inner.push_back(p);
  std::sort(inner.begin(), inner.end());
  for (double p : inner)
    if (p > pts.back()) pts.push_back(p);
  if (b > pts.back()) pts.push_back(b);
  return pts;
}

void for_each_piece_node(double a, double b, std::span<const double> interior, int npts,
                         const std::function<void(double, double)>& visit) {
  if (!(b > a)) return;
  const Grid1D& ref = reference_rule(npts);
  const auto pts = split_points(a, b, interior);
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const double lo = pts[p], hi = pts[p + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (Eigen::Index k = 0; k < ref.nodes.size(); ++k) visit(mid + half * ref.nodes(k), half * ref.weights(k));
  }
}

double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                        std::span<const double> interior, int npts) {
  double acc = 0.0;
  for_each_piece_node(a, b, interior, npts, [&](double x, double w) { acc += w * f(x); });
  return acc;
}

std::vector<double> polynomial_roots_in(std::span<const double> coeffs, double lo, double hi) {
  auto eval = [&](double x) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
  };
  std::vector<double> roots;
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg <= 1) return roots;  // constant (or zero) polynomial
  if (deg == 2) {
    const double r = -coeffs[0] / coeffs[1];
    if (r > lo && r < hi) roots.push_back(r);
    return roots;
  }
  // Bracket sign changes on a fine uniform mesh, then bisect.
  const int cells = 512;
  double x0 = lo, f0 = eval(lo);
  for (int i = 1; i <= cells; ++i) {
    const double x1 = lo + (hi - lo) * i / cells;
    const double f1 = eval(x1);
    if (f0 == 0.0 && x0 > lo) {
      roots.push_back(x0);
    } else if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200 && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++it) {
        const double c = 0.5 * (a + b);
        const double fc = eval(c);
        if ((fc < 0.0) == (fa < 0.0)) {
          a = c;
          fa = fc;
        } else {
          b = c;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace hsm
