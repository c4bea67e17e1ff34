#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hsm/multiindex_grid.hpp"
#include "hsm/spectral.hpp"
#include "support.hpp"

using namespace hsm;

TEST_CASE("multi_index_set enumerates A_{n,d} lexicographically") {
  const auto a = multi_index_set(1, 2);
  REQUIRE(a.size() == 4);
  CHECK(a[0] == std::vector<int>{0, 0});
  CHECK(a[1] == std::vector<int>{0, 1});
  CHECK(a[2] == std::vector<int>{1, 0});
  CHECK(a[3] == std::vector<int>{1, 1});

  const auto b = multi_index_set(0, 3);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == std::vector<int>{0, 0, 0});

  CHECK(multi_index_set(72, 2).size() == 5329);
  CHECK_THROWS_AS(multi_index_set(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(multi_index_set(-1, 2), std::invalid_argument);
}

TEST_CASE("anisotropic index sets use one bound per axis") {
  const auto a = multi_index_set(std::vector<int>{2, 1});
  CHECK(a.size() == 6);
  CHECK(a.max_degree() == 2);
  CHECK(a[5] == std::vector<int>{2, 1});
  CHECK(a.extents() == std::vector<std::size_t>{3, 2});
  const int bad[] = {0, 2};
  CHECK_THROWS_AS(a.index_of(bad), std::out_of_range);
}

TEST_CASE("property: size, strict order and index_of bijection") {
  testing::Gen g(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = g.integer(1, 4);
    const int n = g.integer(0, d > 2 ? 3 : 6);
    const auto set = multi_index_set(n, d);
    std::size_t expect = 1;
    for (int i = 0; i < d; ++i) expect *= static_cast<std::size_t>(n + 1);
    REQUIRE(set.size() == expect);
    for (std::size_t k = 0; k < set.size(); ++k) {
      const auto alpha = set[k];
      CHECK(*std::max_element(alpha.begin(), alpha.end()) <= n);
      CHECK(set.index_of(alpha) == k);
      if (k > 0) CHECK(std::lexicographical_compare(set[k - 1].begin(), set[k - 1].end(), alpha.begin(), alpha.end()));
    }
  }
}

TEST_CASE("tensor_grid weights and volume") {
  SUBCASE("two 2-node axes on [-1, 1]") {
    const auto grid = tensor_grid({legendre_grid_1d(1), legendre_grid_1d(1)});
    CHECK(grid.size() == 4);
    CHECK(grid.weights.sum() == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("space-time box") {
    const auto grid = tensor_grid({legendre_grid_1d(5), legendre_grid_1d(4, 0.0, 1.0)});
    CHECK(grid.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("single axis is the axis itself") {
    const auto ax = legendre_grid_1d(6, -2.0, 3.0);
    const auto grid = tensor_grid({ax});
    REQUIRE(grid.size() == ax.size());
    for (Eigen::Index i = 0; i < ax.nodes.size(); ++i) {
      CHECK(grid.points(i, 0) == ax.nodes(i));
      CHECK(grid.weights(i) == ax.weights(i));
    }
  }
  CHECK_THROWS_AS(tensor_grid({}), std::invalid_argument);
}

TEST_CASE("property: positive weights, box volume and point round trip") {
  testing::Gen g(12);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = g.integer(1, 3);
    std::vector<Grid1D> axes;
    double volume = 1.0;
    for (int i = 0; i < d; ++i) {
      const double a = g.uniform(-2.0, 1.0);
      const double b = a + g.uniform(0.1, 3.0);
      axes.push_back(legendre_grid_1d(g.integer(0, 7), a, b));
      volume *= b - a;
    }
    const auto grid = tensor_grid(axes);
    CHECK((grid.weights.array() > 0.0).all());
    CHECK(std::abs(grid.weights.sum() - volume) <= 1e-10 * volume);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<int> alpha(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        const auto& nodes = axes[static_cast<std::size_t>(i)].nodes;
        Eigen::Index best;
        (nodes.array() - grid.points(static_cast<Eigen::Index>(k), i)).abs().minCoeff(&best);
        alpha[static_cast<std::size_t>(i)] = static_cast<int>(best);
      }
      CHECK(grid.index_set.index_of(alpha) == k);
    }
  }
}

TEST_CASE("apply_along_axis matches the Kronecker product") {
  testing::Gen g(13);
  const std::vector<std::size_t> ext{3, 4};
  const Eigen::MatrixXd op = Eigen::MatrixXd::NullaryExpr(2, 4, [&] { return g.uniform(-1, 1); });
  const Eigen::VectorXd v = g.vector(12);
  const Eigen::VectorXd out = apply_along_axis(ext, 1, op, v);
  REQUIRE(out.size() == 6);
  for (int i = 0; i < 3; ++i)
    for (int r = 0; r < 2; ++r) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j) s += op(r, j) * v(i * 4 + j);
      CHECK(out(i * 2 + r) == doctest::Approx(s).epsilon(1e-14));
    }
}
