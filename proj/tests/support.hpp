#pragma once

// Generators and reference computations shared by the test binaries. Nothing
// here calls into hsm_core: the quadrature rules come from the Jacobi matrix
// eigenproblem and the interpolants use the product formula.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Eigen::VectorXd vector(Eigen::Index n, double lo = -1.0, double hi = 1.0) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }
  /// Coefficients decaying like 2^-k, so the function stays unit scale.
  Eigen::VectorXd decaying(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(-1.0, 1.0) / std::pow(2.0, static_cast<double>(i));
    return v;
  }
  /// Affine (m = 1) or quadratic (m = 2) canonical coefficients with s([-1, 1]) inside [lo, hi].
  std::vector<double> shock_in_band(int m, double lo, double hi) {
    for (;;) {
      std::vector<double> c(static_cast<std::size_t>(m) + 1);
      c[0] = uniform(lo, hi);
      for (int k = 1; k <= m; ++k) c[static_cast<std::size_t>(k)] = uniform(-0.6, 0.6) / k;
      bool inside = true;
      for (int i = 0; i <= 200 && inside; ++i) {
        const double x = -1.0 + 2.0 * i / 200.0;
        double s = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
        inside = s > lo && s < hi;
      }
      if (inside) return c;
    }
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct Rule {
  std::vector<double> x, w;
};

/// N-point Gauss-Legendre rule on [a, b] from the symmetric Jacobi matrix.
inline Rule golub_welsch(int npts, double a = -1.0, double b = 1.0) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(npts, npts);
  for (int k = 1; k < npts; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  for (int i = 0; i < npts; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    r.x.push_back(a + 0.5 * (b - a) * (es.eigenvalues()(i) + 1.0));
    r.w.push_back(0.5 * (b - a) * 2.0 * v0 * v0);
  }
  return r;
}

/// Composite rule: `panels` equal pieces of [a, b], npts Gauss points each.
inline double composite(const std::function<double(double)>& f, double a, double b, int panels, int npts = 8) {
  const Rule ref = golub_welsch(npts);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < npts; ++i) sum += 0.5 * h * ref.w[static_cast<std::size_t>(i)] * f(lo + 0.5 * h * (ref.x[static_cast<std::size_t>(i)] + 1.0));
  }
  return sum;
}

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || (depth < 44 && std::abs(left + right - whole) <= 15.0 * tol)) return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

/// Cardinal function j of `nodes` at x, by the product formula.
inline double lagrange_product(const Eigen::VectorXd& nodes, Eigen::Index j, double x) {
  double p = 1.0;
  for (Eigen::Index k = 0; k < nodes.size(); ++k)
    if (k != j) p *= (x - nodes(k)) / (nodes(j) - nodes(k));
  return p;
}

/// Dense polynomial in the monomial basis, ascending powers.
struct Poly {
  std::vector<double> c;

  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
  }
  Poly derivative() const {
    Poly d;
    for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(static_cast<double>(k) * c[k]);
    if (d.c.empty()) d.c.push_back(0.0);
    return d;
  }
  Poly derivative(int order) const {
    Poly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p;
  }
  Poly operator*(const Poly& o) const {
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }
  /// Exact integral over [a, b] from the antiderivative.
  double integral(double a, double b) const {
    double fa = 0.0, fb = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
      const double ck = c[k] / static_cast<double>(k + 1);
      fa = fa * a + ck;
      fb = fb * b + ck;
    }
    return fb * b - fa * a;
  }
};

inline Poly monomial(int k) {
  Poly p;
  p.c.assign(static_cast<std::size_t>(k) + 1, 0.0);
  p.c.back() = 1.0;
  return p;
}

inline Poly random_poly(Gen& g, int degree) {
  Poly p;
  for (int k = 0; k <= degree; ++k) p.c.push_back(g.uniform(-1.0, 1.0));
  return p;
}

}  // namespace testing
