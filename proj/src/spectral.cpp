#include "hsm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsm {

namespace {

constexpr double kDomainSlack = 1e-12;

// P_{n+1}(x) and its derivative.
std::pair<double, double> legendre_with_derivative(int degree, double x) {
  double p0 = 1.0, p1 = x;
  if (degree == 0) return {1.0, 0.0};
  for (int k = 2; k <= degree; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = degree * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

Eigen::VectorXd barycentric_weights(const Eigen::VectorXd& ref_nodes) {
  // Factor 2 per term keeps the products O(1) on [-1, 1] (capacity 1/2).
  const auto n = ref_nodes.size();
  Eigen::VectorXd w(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double prod = 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j) prod *= 2.0 * (ref_nodes(j) - ref_nodes(k));
    w(j) = 1.0 / prod;
  }
  return w / w.cwiseAbs().maxCoeff();
}

double clamp_unit(double x) {
  if (!(x >= -1.0 - kDomainSlack && x <= 1.0 + kDomainSlack))
    throw std::domain_error("chebyshev: coordinate " + std::to_string(x) + " outside [-1, 1]");
  return std::clamp(x, -1.0, 1.0);
}

}  // namespace

Grid1D legendre_grid_1d(int n, double a, double b) {
  if (n < 0) throw std::invalid_argument("legendre_grid_1d: n must be >= 0");
  if (!(a < b)) throw std::invalid_argument("legendre_grid_1d: need a < b");
  const int npts = n + 1;
  Eigen::VectorXd x(npts), w(npts);
  for (int i = 0; i < npts; ++i) {
    // Chebyshev points of the degree-(n+1) polynomial, ascending.
    double xi = -std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * npts));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(npts, xi);
      const double dx = p / dp;
      xi -= dx;
      if (std::abs(dx) <= 1e-14) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("legendre_grid_1d: Newton did not converge");
    const auto [p, dp] = legendre_with_derivative(npts, xi);
    (void)p;
    x(i) = xi;
    w(i) = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
  // Exact symmetry of the reference rule.
  for (int i = 0; i < npts / 2; ++i) {
    const double xs = 0.5 * (x(npts - 1 - i) - x(i));
    const double ws = 0.5 * (w(i) + w(npts - 1 - i));
    x(i) = -xs;
    x(npts - 1 - i) = xs;
    w(i) = w(npts - 1 - i) = ws;
  }
  if (npts % 2 == 1) x(npts / 2) = 0.0;

  Grid1D g;
  g.degree = n;
  g.a = a;
  g.b = b;
  g.bary = barycentric_weights(x);
  const double half = 0.5 * (b - a);
  g.nodes = (x.array() + 1.0) * half + a;
  g.weights = w * half;
  return g;
}

double chebyshev_1d(int k, double x) {
  if (k == 0) return 1.0;
  double t0 = 1.0, t1 = x;
  for (int j = 2; j <= k; ++j) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

Eigen::VectorXd chebyshev_all(int n, double x) {
  Eigen::VectorXd t(n + 1);
  t(0) = 1.0;
  if (n >= 1) t(1) = x;
  for (int j = 2; j <= n; ++j) t(j) = 2.0 * x * t(j - 1) - t(j - 2);
  return t;
}

double chebyshev_eval(std::span<const int> alpha, std::span<const double> point) {
  if (alpha.size() != point.size()) throw std::invalid_argument("chebyshev_eval: dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) v *= chebyshev_1d(alpha[i], clamp_unit(point[i]));
  return v;
}

double canonical_eval(std::span<const int> alpha, std::span<const double> point) {
  if (alpha.size() != point.size()) throw std::invalid_argument("canonical_eval: dimension mismatch");
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    double p = 1.0;
    for (int e = 0; e < alpha[i]; ++e) p *= point[i];
    v *= p;
  }
  return v;
}

Eigen::VectorXd lagrange_all_1d(const Grid1D& grid, double x) {
  const auto n = grid.nodes.size();
  Eigen::VectorXd l(n);
  double denom = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double diff = x - grid.nodes(k);
    if (diff == 0.0) {
      l.setZero();
      l(k) = 1.0;
      return l;
    }
    l(k) = grid.bary(k) / diff;
    denom += l(k);
  }
  return l / denom;
}

double lagrange_eval_1d(const Grid1D& grid, std::size_t j, double x) {
  if (j >= grid.size()) throw std::out_of_range("lagrange_eval_1d: node index out of range");
  return lagrange_all_1d(grid, x)(static_cast<Eigen::Index>(j));
}

Eigen::MatrixXd chebyshev_vandermonde_1d(std::span<const double> points, int n, double a, double b) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(points.size()), n + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double tau = clamp_unit((2.0 * points[i] - a - b) / (b - a));
    v.row(static_cast<Eigen::Index>(i)) = chebyshev_all(n, tau).transpose();
  }
  return v;
}

Eigen::MatrixXd vandermonde(const Eigen::MatrixXd& points, const MultiIndexSet& index_set, Basis basis,
                            const TensorGrid* lagrange_grid) {
  const auto d = index_set.dim();
  if (static_cast<std::size_t>(points.cols()) != d)
    throw std::invalid_argument("vandermonde: point dimension does not match index set");
  const auto npts = points.rows();
  const auto ncols = static_cast<Eigen::Index>(index_set.size());
  Eigen::MatrixXd v(npts, ncols);
  // Per-axis 1D tables, then products.
  std::vector<Eigen::MatrixXd> tables(d);
  for (std::size_t i = 0; i < d; ++i) {
    const int n = index_set.degrees()[i];
    Eigen::MatrixXd tab(npts, n + 1);
    for (Eigen::Index k = 0; k < npts; ++k) {
      const double x = points(k, static_cast<Eigen::Index>(i));
      switch (basis) {
        case Basis::chebyshev:
          tab.row(k) = chebyshev_all(n, clamp_unit(x)).transpose();
          break;
        case Basis::canonical: {
          double p = 1.0;
          for (int e = 0; e <= n; ++e) {
            tab(k, e) = p;
            p *= x;
          }
          break;
        }
        case Basis::lagrange: {
          if (lagrange_grid == nullptr || lagrange_grid->index_set.degrees() != index_set.degrees())
            throw std::invalid_argument("vandermonde: lagrange basis needs a matching node grid");
          tab.row(k) = lagrange_all_1d(lagrange_grid->axes[i], x).transpose();
          break;
        }
      }
    }
    tables[i] = std::move(tab);
  }
  for (Eigen::Index c = 0; c < ncols; ++c) {
    const auto alpha = index_set[static_cast<std::size_t>(c)];
    Eigen::VectorXd col = tables[0].col(alpha[0]);
    for (std::size_t i = 1; i < d; ++i) col.array() *= tables[i].col(alpha[i]).array();
    v.col(c) = col;
  }
  return v;
}

Eigen::MatrixXd diff_matrix_1d(const Grid1D& grid) {
  const auto n = grid.nodes.size();
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      dm(i, j) = (grid.bary(j) / grid.bary(i)) / (grid.nodes(i) - grid.nodes(j));
      diag -= dm(i, j);
    }
    dm(i, i) = diag;
  }
  return dm;
}

Eigen::MatrixXd diff_matrix_tensor(const TensorGrid& grid, std::size_t axis) {
  if (axis >= grid.dim()) throw std::out_of_range("diff_matrix_tensor: axis out of range");
  const Eigen::MatrixXd d1 = diff_matrix_1d(grid.axes[axis]);
  const auto ext = grid.extents();
  Eigen::Index outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= static_cast<Eigen::Index>(ext[i]);
  for (std::size_t i = axis + 1; i < ext.size(); ++i) inner *= static_cast<Eigen::Index>(ext[i]);
  const auto mid = d1.rows();
  const auto total = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(total, total);
  for (Eigen::Index o = 0; o < outer; ++o)
    for (Eigen::Index r = 0; r < mid; ++r)
      for (Eigen::Index c = 0; c < mid; ++c)
        for (Eigen::Index in = 0; in < inner; ++in)
          dm((o * mid + r) * inner + in, (o * mid + c) * inner + in) = d1(r, c);
  return dm;
}

Eigen::VectorXd apply_diff(const TensorGrid& grid, std::size_t axis, const Eigen::VectorXd& values) {
  if (axis >= grid.dim()) throw std::out_of_range("apply_diff: axis out of range");
  const auto ext = grid.extents();
  return apply_along_axis(ext, axis, diff_matrix_1d(grid.axes[axis]), values);
}

}  // namespace hsm
