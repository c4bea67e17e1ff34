#include <doctest.h>

#include <cmath>

#include "hsm/spectral.hpp"
#include "support.hpp"

using namespace hsm;
using doctest::Approx;

TEST_CASE("legendre_grid_1d classical rules") {
  const auto g1 = legendre_grid_1d(1);
  CHECK(g1.nodes(0) == Approx(-0.5773502692).epsilon(1e-10));
  CHECK(g1.nodes(1) == Approx(0.5773502692).epsilon(1e-10));
  CHECK(g1.weights(0) == Approx(1.0).epsilon(1e-14));
  CHECK(g1.weights(1) == Approx(1.0).epsilon(1e-14));

  const auto g2 = legendre_grid_1d(2);
  CHECK(g2.nodes(0) == Approx(-0.7745966692).epsilon(1e-10));
  CHECK(std::abs(g2.nodes(1)) < 1e-15);
  CHECK(g2.nodes(2) == Approx(0.7745966692).epsilon(1e-10));
  CHECK(g2.weights(0) == Approx(5.0 / 9.0).epsilon(1e-14));
  CHECK(g2.weights(1) == Approx(8.0 / 9.0).epsilon(1e-14));

  const auto g3 = legendre_grid_1d(1, 0.0, 1.0);
  CHECK(g3.nodes(0) == Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g3.nodes(1) == Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g3.weights(0) == Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(legendre_grid_1d(-1), std::invalid_argument);
  CHECK_THROWS_AS(legendre_grid_1d(3, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("legendre nodes agree with the Jacobi eigenproblem and are reproducible") {
  for (int n : {0, 3, 10, 31, 72}) {
    const auto g = legendre_grid_1d(n);
    const auto ref = testing::golub_welsch(n + 1);
    for (int i = 0; i <= n; ++i) {
      CHECK(std::abs(g.nodes(i) - ref.x[static_cast<std::size_t>(i)]) <= 1e-13);
      CHECK(std::abs(g.weights(i) - ref.w[static_cast<std::size_t>(i)]) <= 1e-13);
      if (i > 0) CHECK(g.nodes(i) > g.nodes(i - 1));
    }
    const auto again = legendre_grid_1d(n);
    CHECK((again.nodes.array() == g.nodes.array()).all());
    CHECK((again.weights.array() == g.weights.array()).all());
  }
}

TEST_CASE("property: 2n+1 exactness on monomials") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(0, 40);
    const double a = gen.uniform(-1.5, 0.5), b = a + gen.uniform(0.2, 2.0);
    const auto g = legendre_grid_1d(n, a, b);
    const int k = gen.integer(0, 2 * n + 1);
    const auto p = testing::monomial(k);
    double q = 0.0;
    for (Eigen::Index i = 0; i < g.nodes.size(); ++i) q += g.weights(i) * p(g.nodes(i));
    const double exact = p.integral(a, b);
    CHECK(std::abs(q - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("basis evaluation examples") {
  const int a00[] = {0, 0};
  const double p0[] = {0.3, -0.8};
  CHECK(chebyshev_eval(a00, p0) == 1.0);
  const int a3[] = {3};
  const double half[] = {0.5};
  CHECK(chebyshev_eval(a3, half) == Approx(-1.0).epsilon(1e-15));
  const int a21[] = {2, 1};
  const double p1[] = {0.5, -1.0};
  CHECK(chebyshev_eval(a21, p1) == Approx(0.5).epsilon(1e-15));
  const double edge[] = {1.0 + 5e-13};
  CHECK(chebyshev_eval(a3, edge) == Approx(1.0).epsilon(1e-15));
  const double outside[] = {1.0 + 1e-9};
  CHECK_THROWS_AS(chebyshev_eval(a3, outside), std::domain_error);

  const int c0[] = {0};
  const double x73[] = {7.3};
  CHECK(canonical_eval(c0, x73) == 1.0);
  const int c2[] = {2};
  const double xm3[] = {-0.3};
  CHECK(canonical_eval(c2, xm3) == Approx(0.09).epsilon(1e-15));
  const int c12[] = {1, 2};
  const double p23[] = {2.0, 3.0};
  CHECK(canonical_eval(c12, p23) == 18.0);
}

TEST_CASE("chebyshev recurrence matches cos(k acos x)") {
  testing::Gen gen(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = gen.integer(0, 60);
    const double x = gen.uniform(-1.0, 1.0);
    CHECK(std::abs(chebyshev_1d(k, x) - std::cos(k * std::acos(x))) <= 1e-12);
  }
}

TEST_CASE("lagrange cardinal functions") {
  const auto g = legendre_grid_1d(6);
  CHECK(lagrange_eval_1d(g, 0, g.nodes(0)) == 1.0);
  CHECK(lagrange_eval_1d(g, 0, g.nodes(1)) == 0.0);
  CHECK(lagrange_eval_1d(legendre_grid_1d(1), 0, 0.0) == Approx(0.5).epsilon(1e-15));

  testing::Gen gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto gr = legendre_grid_1d(gen.integer(1, 20), -1.0, gen.uniform(-0.5, 2.0));
    const double x = gen.uniform(gr.a, gr.b);
    const auto all = lagrange_all_1d(gr, x);
    CHECK(all.sum() == Approx(1.0).epsilon(1e-12));
    const auto j = static_cast<std::size_t>(gen.integer(0, gr.degree));
    CHECK(std::abs(all(static_cast<Eigen::Index>(j)) - testing::lagrange_product(gr.nodes, static_cast<Eigen::Index>(j), x)) <=
          1e-11);
  }
}

TEST_CASE("vandermonde matrices") {
  SUBCASE("square chebyshev vandermonde on the full grid is invertible") {
    const auto grid = tensor_grid({legendre_grid_1d(8), legendre_grid_1d(8)});
    const auto V = vandermonde(grid.points, grid.index_set, Basis::chebyshev);
    CHECK((V.array().abs() <= 1.0 + 1e-14).all());
    testing::Gen gen(24);
    const Eigen::VectorXd rhs = gen.vector(V.rows());
    const Eigen::VectorXd x = V.partialPivLu().solve(rhs);
    CHECK((V * x - rhs).norm() <= 1e-8);
  }
  SUBCASE("canonical row at (1, 1)") {
    Eigen::MatrixXd p(1, 2);
    p << 1.0, 1.0;
    const auto V = vandermonde(p, multi_index_set(1, 2), Basis::canonical);
    CHECK(V.isApprox(Eigen::MatrixXd::Ones(1, 4)));
  }
  SUBCASE("lagrange basis on its own grid is the identity") {
    const auto grid = tensor_grid({legendre_grid_1d(4), legendre_grid_1d(3, 0.0, 2.0)});
    const auto V = vandermonde(grid.points, grid.index_set, Basis::lagrange, &grid);
    CHECK((V - Eigen::MatrixXd::Identity(V.rows(), V.cols())).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("1D differentiation examples") {
  const auto g = legendre_grid_1d(9);
  const auto D = diff_matrix_1d(g);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(g.nodes.size());
  CHECK((D * one).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((D * g.nodes - one).cwiseAbs().maxCoeff() <= 1e-12);

  const auto g5 = legendre_grid_1d(5);
  const auto D5 = diff_matrix_1d(g5);
  const Eigen::VectorXd cube = g5.nodes.array().cube();
  CHECK((D5 * (D5 * cube) - 6.0 * g5.nodes).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("tensor differentiation examples") {
  const auto grid = tensor_grid({legendre_grid_1d(4), legendre_grid_1d(4, 0.0, 1.0)});
  const Eigen::VectorXd x = grid.points.col(0), t = grid.points.col(1);
  const auto Dx = diff_matrix_tensor(grid, 0), Dt = diff_matrix_tensor(grid, 1);
  const Eigen::VectorXd xt = x + t;
  CHECK((Dx * xt - Eigen::VectorXd::Ones(xt.size())).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((Dt * x).cwiseAbs().maxCoeff() <= 1e-10);
  const Eigen::VectorXd xt2 = x.array() * t.array().square();
  const Eigen::VectorXd expect = 2.0 * x.array() * t.array();
  CHECK((Dt * xt2 - expect).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK_THROWS_AS(diff_matrix_tensor(grid, 2), std::out_of_range);
}

TEST_CASE("property: differentiation is exact on random polynomials and commutes") {
  testing::Gen gen(25);
  for (int trial = 0; trial < 20; ++trial) {
    const int nx = gen.integer(1, 20), nt = gen.integer(1, 20);
    const double T = gen.uniform(0.5, 2.0);
    const auto grid = tensor_grid({legendre_grid_1d(nx), legendre_grid_1d(nt, 0.0, T)});
    const auto p = testing::random_poly(gen, nx), q = testing::random_poly(gen, nt);
    const auto dp = p.derivative(), dq = q.derivative();
    Eigen::VectorXd u(grid.size()), ux(grid.size()), ut(grid.size());
    for (Eigen::Index k = 0; k < u.size(); ++k) {
      const double x = grid.points(k, 0), t = grid.points(k, 1);
      u(k) = p(x) * q(t);
      ux(k) = dp(x) * q(t);
      ut(k) = p(x) * dq(t);
    }
    const double scale = std::max(1.0, ux.cwiseAbs().maxCoeff());
    CHECK((apply_diff(grid, 0, u) - ux).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    CHECK((apply_diff(grid, 1, u) - ut).cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, ut.cwiseAbs().maxCoeff()));
    CHECK(apply_diff(grid, 0, Eigen::VectorXd::Ones(u.size())).cwiseAbs().maxCoeff() <= 1e-10);
    const auto Dx = diff_matrix_tensor(grid, 0), Dt = diff_matrix_tensor(grid, 1);
    CHECK((Dx * Dt - Dt * Dx).norm() <= 1e-8);
    CHECK((Dx * u - apply_diff(grid, 0, u)).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("spectral accuracy on sin(5x)") {
  const auto g = legendre_grid_1d(32);
  const Eigen::VectorXd u = (5.0 * g.nodes.array()).sin();
  const Eigen::VectorXd du = 5.0 * (5.0 * g.nodes.array()).cos();
  CHECK((diff_matrix_1d(g) * u - du).cwiseAbs().maxCoeff() <= 1e-8);
}
