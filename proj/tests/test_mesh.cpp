#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tedfem/error.hpp"
#include "tedfem/mesh.hpp"

using namespace tedfem;

TEST_SUITE("mesh") {

TEST_CASE("shape functions") {
  auto a = shape_values(-1.0, 2.0);
  CHECK(a.N[0] == 1.0);
  CHECK(a.N[1] == 0.0);
  auto m = shape_values(0.0, 4.0);
  CHECK(m.N[0] == 0.5);
  CHECK(m.N[1] == 0.5);
  CHECK(m.dN_dx[0] == -0.25);
  CHECK(m.dN_dx[1] == 0.25);
  for (double xi = -1.0; xi <= 1.0; xi += 0.125) {
    auto s = shape_values(xi, 3e-9);
    CHECK(s.N[0] + s.N[1] == doctest::Approx(1.0).epsilon(1e-16));
    CHECK(s.dN_dx[0] + s.dN_dx[1] == 0.0);
  }
}

TEST_CASE("uniform mesh") {
  auto one = uniform_mesh(100e-9, 1, 1e-16);
  REQUIRE(one.n_nodes() == 2);
  CHECK(one.nodes()[0] == 0.0);
  CHECK(one.nodes()[1] == 100e-9);
  auto four = uniform_mesh(100e-9, 4, 1e-16);
  for (std::size_t e = 0; e < four.n_elem(); ++e) CHECK(four.element_length(e) == doctest::Approx(25e-9).epsilon(1e-15));
  for (int n : {3, 7, 100, 977}) {
    auto m = uniform_mesh(159e-9, n, 1e-16);
    double sum = 0.0;
    for (std::size_t e = 0; e < m.n_elem(); ++e) sum += m.element_length(e);
    CHECK(std::abs(sum - 159e-9) <= 4.0 * n * std::numeric_limits<double>::epsilon() * 159e-9);
    CHECK(m.length() == 159e-9);
  }
  CHECK_THROWS_AS(uniform_mesh(0.0, 4, 1e-16), Error);
  CHECK_THROWS_AS(uniform_mesh(1e-7, 0, 1e-16), Error);
  CHECK_THROWS_AS(uniform_mesh(1e-7, 4, -1.0), Error);
}

TEST_CASE("explicit node sets are validated") {
  CHECK_NOTHROW(Mesh1D({0.0, 0.1, 0.5}, 1.0));
  CHECK_THROWS_AS(Mesh1D({0.0, 0.5, 0.5}, 1.0), Error);
  CHECK_THROWS_AS(Mesh1D({0.0}, 1.0), Error);
  CHECK_THROWS_AS(Mesh1D({0.0, 1.0}, 0.0), Error);
}

TEST_CASE("gauss rules") {
  for (int n = 1; n <= 12; ++n) {
    auto q = QuadRule::gauss(n);
    REQUIRE(q.size() == static_cast<std::size_t>(n));
    CHECK(std::accumulate(q.weights.begin(), q.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    // exact up to degree 2n-1
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i], d);
      double exact = (d % 2 == 1) ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(QuadRule::gauss(0), Error);
}

TEST_CASE("two point rule integrates cubics") {
  auto q = QuadRule::gauss(2);
  // p(x) = 3 + 2x - 5x^2 + 7x^3 on an element [a, b]
  double a = 0.3, b = 1.7;
  auto p = [](double x) { return 3 + 2 * x - 5 * x * x + 7 * x * x * x; };
  auto P = [](double x) { return 3 * x + x * x - 5.0 / 3 * x * x * x + 7.0 / 4 * x * x * x * x; };
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * p(0.5 * (a + b) + 0.5 * (b - a) * q.points[i]) * 0.5 * (b - a);
  CHECK(s == doctest::Approx(P(b) - P(a)).epsilon(1e-14));
}

TEST_CASE("linear fields are interpolated exactly") {
  auto m = uniform_mesh(2.0, 5, 1.0);
  auto q = QuadRule::gauss(3);
  auto f = [](double x) { return 4.0 - 1.5 * x; };
  for (std::size_t e = 0; e < m.n_elem(); ++e) {
    double x0 = m.nodes()[e], x1 = m.nodes()[e + 1];
    for (double xi : q.points) {
      auto s = shape_values(xi, x1 - x0);
      double x = s.N[0] * x0 + s.N[1] * x1;
      CHECK(s.N[0] * f(x0) + s.N[1] * f(x1) == doctest::Approx(f(x)).epsilon(1e-15));
      CHECK(s.dN_dx[0] * f(x0) + s.dN_dx[1] * f(x1) == doctest::Approx(-1.5).epsilon(1e-14));
    }
  }
}

}
