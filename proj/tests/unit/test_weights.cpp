#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "glancelab/error.hpp"
#include "glancelab/oracle.hpp"
#include "glancelab/weights.hpp"

using namespace glancelab;
using namespace glancelab::weights;

TEST_CASE("cutoffs") {
  for (auto shape : {CutoffShape::ExpGlue, CutoffShape::Smoothstep}) {
    CHECK(chi1(shape, 0.5) == 0.0);
    CHECK(chi1(shape, 1.0) == 0.0);
    CHECK(chi1(shape, 2.0) == 1.0);
    CHECK(chi1(shape, 7.0) == 1.0);
    CHECK(chi1(shape, 1.5) == doctest::Approx(0.5));
    for (double t = 0.0; t <= 3.0; t += 0.01) CHECK(chi1(shape, t) + chi2(shape, t) == doctest::Approx(1.0));
    double prev = 0.0;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
      CHECK(chi1(shape, t) >= prev);
      prev = chi1(shape, t);
    }
    CHECK(cutoff_from_string(to_string(shape)) == shape);
  }
  CHECK_THROWS_AS(cutoff_from_string("tanh"), ConfigError);
  CHECK(cutoff_identifier(CutoffShape::ExpGlue) != cutoff_identifier(CutoffShape::Smoothstep));
}

TEST_CASE("weight pieces") {
  const double h = 1e-3;
  const WeightSpec quarter{2.0 / 3.0, 0.25};
  const double hr = std::pow(h, quarter.rho);
  CHECK(g1(quarter, h, hr / 2.0) == 0.0);
  CHECK(g1(quarter, h, 4.0 * hr) == doctest::Approx(std::pow(4.0 * hr, 0.25)).epsilon(1e-14));
  CHECK(g1({2.0 / 3.0, 0.0}, h, 2.0 * hr) == 1.0);
  CHECK(g2(quarter, h, 0.0) == doctest::Approx(std::pow(h, 0.25 * quarter.rho)).epsilon(1e-14));
  CHECK(g2(quarter, h, 3.0 * hr) == 0.0);
  CHECK(g1({2.0 / 3.0, 0.0}, h, 1.5 * hr) + g2({2.0 / 3.0, 0.0}, h, 1.5 * hr) == doctest::Approx(1.0));
  CHECK(g(quarter, h, 2.5 * hr) == doctest::Approx(std::pow(2.5 * hr, 0.25)));
  CHECK(g(quarter, h, 0.5 * hr) == doctest::Approx(std::pow(h, 0.25 * quarter.rho)));
  CHECK(weight(quarter, WeightPart::G1, h, 4.0 * hr) == g1(quarter, h, 4.0 * hr));
  CHECK(weight(quarter, WeightPart::G2, h, 0.0) == g2(quarter, h, 0.0));

  double max_jump = 0.0;
  double prev = g(quarter, h, 0.5 * hr);
  for (int i = 1; i <= 20000; ++i) {
    const double sigma = (0.5 + 2.5 * i / 20000.0) * hr;
    const double v = g(quarter, h, sigma);
    max_jump = std::max(max_jump, std::abs(v - prev));
    prev = v;
  }
  CHECK(max_jump < 1e-3 * g(quarter, h, 3.0 * hr));
}

TEST_CASE("weight application") {
  const double h = 1e-2;
  Trace t;
  t.radius = 0.5;
  t.h = h;
  t.coefficients[0] = {1.0, 0.5};
  t.coefficients[3] = {-0.25, 2.0};
  t.coefficients[-7] = {0.0, 1.0};
  const auto same = apply_weight(t, {2.0 / 3.0, 0.0});
  for (const auto& [k, c] : t.coefficients) CHECK(std::abs(same.coefficients.at(k) - c) < 1e-15);

  Trace one;
  one.radius = 0.5;
  one.h = h;
  one.coefficients[20] = 1.0;
  const WeightSpec w{2.0 / 3.0, 0.4};
  const double sigma = sigma_of(20, h, 0.5);
  CHECK(trace_norm(apply_weight(one, w, WeightPart::G)) == doctest::Approx(g(w, h, sigma) * trace_norm(one)));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Trace r;
  r.radius = 0.5;
  r.h = 0.02;
  for (int k = -10; k < 10; ++k) r.coefficients[k] = {normal(rng), normal(rng)};
  const auto wr = apply_weight(r, {0.5, 0.3}, WeightPart::G1);
  for (const auto& [k, c] : r.coefficients) {
    const double expect = g1({0.5, 0.3}, 0.02, 1.0 - std::pow(0.02 * k / 0.5, 2));
    CHECK(std::abs(wr.coefficients.at(k) - c * expect) < 1e-12);
  }
  CHECK(std::abs(trace_norm(wr) - oracle::trace_norm_quadrature(wr)) < 1e-10);
}

TEST_CASE("band filter") {
  const double h = 1e-4;
  const double R = 0.5;
  const BandSpec band{0.3, 0.6};
  const int inside = static_cast<int>(std::floor(R / h * std::sqrt(1.0 - std::pow(h, 0.45))));
  const int outside = static_cast<int>(std::floor(R / h * std::sqrt(1.0 - 2.0 * std::pow(h, 0.3))));
  CHECK(in_band(band, inside, h, R));
  CHECK_FALSE(in_band(band, outside, h, R));
  CHECK_FALSE(in_band(band, 0, h, R));

  Trace t;
  t.radius = R;
  t.h = h;
  t.coefficients[inside] = 1.0;
  t.coefficients[outside] = 1.0;
  const auto f = apply_band(t, band);
  CHECK(f.coefficients.size() == 1);
  CHECK(f.coefficients.count(inside) == 1);
  Trace empty;
  CHECK(apply_band(empty, band).coefficients.empty());
}

TEST_CASE("trace norm") {
  Trace zero;
  CHECK(trace_norm(zero) == 0.0);
  Trace one;
  one.radius = 0.5;
  one.coefficients[11] = 1.0;
  CHECK(trace_norm(one) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(sigma_of(0, 0.01, 0.5) == 1.0);
  CHECK(sigma_of(50, 0.01, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("limit density") {
  CHECK(limit_density(0.0, 0.25) == doctest::Approx(1.0));
  CHECK(limit_density(0.5, 0.1) == doctest::Approx(std::pow(0.75, 0.4)));
  CHECK(limit_density(1.2, 0.1) == 0.0);
}
