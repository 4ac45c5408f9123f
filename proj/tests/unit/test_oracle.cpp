#include <cmath>
#include <numbers>

#include <doctest.h>

#include "glancelab/error.hpp"
#include "glancelab/oracle.hpp"
#include "glancelab/selftest.hpp"

using namespace glancelab;
using namespace glancelab::oracle;

TEST_CASE("series bessel oracle") {
  CHECK(bessel_series(1, 0.0) == 0.0);
  CHECK(bessel_series(0, 0.0) == 1.0);
  const double j01 = bessel_series_root(0, 2.0, 3.0);
  CHECK(std::abs(bessel_series(0, j01)) < 1e-10);
  CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-13));
  for (int n = 1; n < 30; n += 3) {
    for (double x = 0.5; x < 40.0; x += 1.7) {
      CHECK(bessel_series(n + 1, x) * bessel_series(n - 1, x) <= bessel_series(n, x) * bessel_series(n, x) + 1e-300);
    }
  }
  CHECK_THROWS_AS(bessel_series(kBesselSeriesMaxOrder + 1, 10.0), DomainError);
  CHECK_THROWS_AS(bessel_series(3, kBesselSeriesMaxX * 2.0), DomainError);
}

TEST_CASE("legendre oracle") {
  CHECK(legendre_recurrence(0, 0, 0.3) == doctest::Approx(1.0 / std::sqrt(4.0 * std::numbers::pi)));
  CHECK(legendre_recurrence(7, 2, 0.0) == 0.0);
  CHECK(legendre_recurrence(1, 0, 1.0) == doctest::Approx(std::sqrt(3.0 / (4.0 * std::numbers::pi))));
  CHECK(std::isfinite(legendre_recurrence(5000, 1000, 0.1)));
}

TEST_CASE("quadrature oracle linearity") {
  const double lambda = 2.404825557695773;
  const double c = 1.0 / (std::sqrt(std::numbers::pi) * std::abs(bessel_series(1, lambda)));
  CHECK(std::abs(disk_quadrature_norm(0, lambda, c) - 1.0) < 1e-8);
  CHECK(std::abs(disk_quadrature_norm(0, lambda, 2.0 * c) - 2.0) < 2e-8);
}

TEST_CASE("olver ode oracle") {
  const auto z = olver_ode_z({-1e-4, -0.1, -0.5, -1.018104888567116, -2.0});
  REQUIRE(z.size() == 5);
  CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(z[3] - 2.0) < 1e-9);
  for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] > z[i - 1]);
}

TEST_CASE("weyl oracle") {
  CHECK(weyl_count(0.0, 2.0) == 0);
  const int c = weyl_count(200.0, 201.0);
  CHECK(c > 79);
  CHECK(c < 120);
}

TEST_CASE("full selftest passes") {
  const auto reports = selftest::run_all();
  CHECK(reports.size() >= 10);
  for (const auto& r : reports) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
  CHECK(selftest::all_passed(reports));
}
