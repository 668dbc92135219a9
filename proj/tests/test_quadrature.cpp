#include <doctest.h>

#include <cmath>

#include "pdg/quadrature.hpp"

using namespace pdg;

namespace {

double monomial_integral(int k) { return k % 2 == 1 ? 0.0 : 2.0 / (k + 1); }

}  // namespace

TEST_CASE("gauss-lobatto rule integrates polynomials up to degree 2d-1") {
  for (int d = 1; d <= 8; ++d) {
    const auto q = gauss_lobatto<double>(d);
    CHECK(q.nodes[0] == -1.0);
    CHECK(q.nodes[d] == 1.0);
    for (int k = 0; k <= 2 * d - 1; ++k) {
      double sum = 0;
      for (int i = 0; i <= d; ++i) sum += q.weights[i] * std::pow(q.nodes[i], k);
      CHECK(sum == doctest::Approx(monomial_integral(k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss-lobatto rule is not exact at degree 2d") {
  for (int d = 1; d <= 8; ++d) {
    const auto q = gauss_lobatto<double>(d);
    double sum = 0;
    for (int i = 0; i <= d; ++i) sum += q.weights[i] * std::pow(q.nodes[i], 2 * d);
    CHECK(std::abs(sum - monomial_integral(2 * d)) > 1e-6);
  }
}

TEST_CASE("low-degree rules match closed forms") {
  const auto q2 = gauss_lobatto<double>(2);
  CHECK(q2.nodes[1] == doctest::Approx(0.0));
  CHECK(q2.weights[0] == doctest::Approx(1.0 / 3.0));
  CHECK(q2.weights[1] == doctest::Approx(4.0 / 3.0));

  const auto q3 = gauss_lobatto<double>(3);
  CHECK(q3.nodes[1] == doctest::Approx(-1.0 / std::sqrt(5.0)));
  CHECK(q3.nodes[2] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(q3.weights[0] == doctest::Approx(1.0 / 6.0));
  CHECK(q3.weights[1] == doctest::Approx(5.0 / 6.0));
}

TEST_CASE("unsupported degrees are rejected") {
  CHECK_THROWS_AS(gauss_lobatto<double>(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_lobatto<double>(9), std::invalid_argument);
}

TEST_CASE("differentiation matrix is exact on the polynomial space") {
  for (int d = 1; d <= 8; ++d) {
    const auto q = gauss_lobatto<double>(d);
    // p(x) = (x + 0.3)^d, sampled at the nodes
    for (int j = 0; j <= d; ++j) {
      double dp = 0;
      for (int i = 0; i <= d; ++i) dp += std::pow(q.nodes[i] + 0.3, d) * q.diff(i, j);
      CHECK(dp == doctest::Approx(d * std::pow(q.nodes[j] + 0.3, d - 1)).epsilon(1e-10));
    }
  }
}

TEST_CASE("basis is cardinal at the nodes and a partition of unity") {
  const auto q = gauss_lobatto<double>(5);
  for (int i = 0; i <= 5; ++i) {
    const auto phi = q.basis_at(q.nodes[i]);
    for (int j = 0; j <= 5; ++j) CHECK(phi[j] == doctest::Approx(i == j ? 1.0 : 0.0));
  }
  for (double x : {-0.9, -0.33, 0.1, 0.77}) {
    const auto phi = q.basis_at(x);
    CHECK(phi.sum() == doctest::Approx(1.0));
    double interp = 0;
    for (int i = 0; i <= 5; ++i) interp += phi[i] * std::pow(q.nodes[i], 4);
    CHECK(interp == doctest::Approx(std::pow(x, 4)));
  }
}

TEST_CASE("rules are available in extended precision") {
  const auto q = gauss_lobatto<long double>(6);
  long double sum = 0;
  for (int i = 0; i <= 6; ++i) sum += q.weights[i] * q.nodes[i] * q.nodes[i] * q.nodes[i] * q.nodes[i];
  CHECK(static_cast<double>(std::abs(sum - 0.4L)) < 1e-17);
}

TEST_CASE("minimal node spacing is the first gap") {
  const auto q = gauss_lobatto<double>(3);
  CHECK(min_node_spacing(q) == doctest::Approx(1.0 - 1.0 / std::sqrt(5.0)));
}
