#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>

#include <doctest.h>

#include "glancelab/error.hpp"
#include "glancelab/experiments.hpp"
#include "glancelab/oracle.hpp"

using namespace glancelab;
using namespace glancelab::experiments;

TEST_CASE("exponent fit on synthetic data") {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(std::pow(10.0, 1.0 + i / 19.0));
    y.push_back(3.0 * std::pow(x.back(), 0.7));
  }
  const auto f = fit_exponent(x, y);
  CHECK(std::abs(f.slope - 0.7) < 1e-12);
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0));
  CHECK(f.count == 20);

  const auto flat = fit_exponent(x, std::vector<double>(x.size(), 2.5));
  CHECK(flat.slope == doctest::Approx(0.0));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> yn;
    for (double xv : x) yn.push_back(2.0 * std::pow(xv, -0.3) * (1.0 + noise(rng)));
    CHECK(std::abs(fit_exponent(x, yn).slope + 0.3) < 0.02);
  }
}

TEST_CASE("exponent fit rejects bad input") {
  CHECK_THROWS_AS(fit_exponent({1, 2, 3}, {1, 2, 3}), FitError);
  CHECK_THROWS_AS(fit_exponent({1, 2, 3, 4}, {1, 2, -3, 4}), FitError);
  CHECK_THROWS_AS(fit_exponent({1, 2, 3, 4}, {1, 2, 3}), FitError);
  std::vector<double> x, y;
  for (int i = 1; i <= 12; ++i) {
    x.push_back(i);
    y.push_back(i % 2 ? 1.0 : 3.0);
  }
  CHECK_THROWS_AS(fit_exponent(x, y), FitError);
}

TEST_CASE("fit window") {
  const std::vector<double> n{10, 20, 30, 40, 10, 20, 30, 40};
  const std::vector<double> s{0, 0, 0, 0, 0.25, 0.25, 0.25, 0.25};
  FitOptions o;
  o.s_filter = 0.25;
  o.drop_low = 0.25;
  CHECK(fit_window(n, s, o) == std::vector<std::size_t>{5, 6, 7});
  o.drop_low = 0.0;
  CHECK(fit_window(n, s, o) == std::vector<std::size_t>{4, 5, 6, 7});
  o.s_filter.reset();
  CHECK(fit_window(n, s, o).size() == 8);
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid({1000.0, 100000.0, 24});
  CHECK(g.size() == 24);
  CHECK(g.front() == 1000);
  CHECK(g.back() == 100000);
  CHECK(std::set<int>(g.begin(), g.end()).size() == g.size());
  CHECK(geometric_grid({5.0, 8.0, 10}).size() == 4);
  CHECK_THROWS_AS(geometric_grid({10.0, 5.0, 3}), ConfigError);
  CHECK_THROWS_AS(geometric_grid({1.0, 5.0, 0}), ConfigError);
}

TEST_CASE("enum names") {
  for (auto k : {SweepKind::Amplitude, SweepKind::Sharpness, SweepKind::NormalDerivative, SweepKind::NormalBand,
                 SweepKind::Quasimode}) {
    CHECK(kind_from_string(to_string(k)) == k);
  }
  CHECK(domain_from_string("sphere") == Domain::Sphere);
  CHECK(law_from_string("glancing-biased") == CoefficientLaw::GlancingBiased);
  CHECK_THROWS_AS(kind_from_string("nope"), ConfigError);
  CHECK_THROWS_AS(domain_from_string("torus"), ConfigError);
}

TEST_CASE("columns") {
  CHECK(column_names().size() == 11);
  CHECK(is_column("weighted_norm"));
  CHECK_FALSE(is_column("m"));
  SweepRow r;
  r.n = 7;
  r.xi_d = 0.5;
  CHECK(column(r, "n") == 7.0);
  CHECK(column(r, "xi_d") == 0.5);
  CHECK_THROWS_AS(column(r, "bogus"), ConfigError);
}

TEST_CASE("amplitude sweep") {
  SweepConfig c;
  c.grid = {1000.0, 20000.0, 10};
  const auto r = amplitude_sweep(c);
  REQUIRE(r.rows.size() == 10);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].h < r.rows[i - 1].h);
  for (const auto& row : r.rows) {
    CHECK(std::isnan(row.s));
    CHECK(row.weighted_norm == doctest::Approx(std::sqrt(2.0 * std::numbers::pi * 0.5) * row.amplitude));
    CHECK(row.amplitude > 0.0);
    CHECK(row.xi_d * row.xi_d == doctest::Approx(row.b));
  }
  CHECK(r.diagnostics.count("m_over_n_min") == 1);
  CHECK(r.diagnostics.at("rows") == 10.0);

  SweepConfig fixed = c;
  fixed.target.alpha = 0.0;
  fixed.grid = {200.0, 20000.0, 12};
  const auto rf = amplitude_sweep(fixed);
  CHECK(rf.rows.size() + rf.skipped.size() == 12);
  FitOptions ex0;
  ex0.drop_low = 0.0;
  if (rf.rows.size() >= 6) CHECK(std::abs(fit_exponent(rf, "n", "amplitude", ex0).slope) < 0.05);

  SweepConfig a3 = c, a6 = c;
  a3.target.alpha = 0.3;
  a6.target.alpha = 0.6;
  CHECK(fit_exponent(amplitude_sweep(a3), "n", "amplitude").slope <
        fit_exponent(amplitude_sweep(a6), "n", "amplitude").slope);
}

TEST_CASE("sharpness sweep validates band") {
  SweepConfig c;
  c.kind = SweepKind::Sharpness;
  c.rho1 = 0.6;
  c.rho2 = 0.3;
  CHECK_THROWS_AS(sharpness_sweep(c), ConfigError);
  c.rho1 = 0.3;
  c.rho2 = 0.45;
  CHECK_THROWS_AS(sharpness_sweep(c), ConfigError);
}

TEST_CASE("sharpness sweep logs skipped rows") {
  SweepConfig c;
  c.kind = SweepKind::Sharpness;
  c.s_list = {0.0, 0.4};
  c.grid = {1000.0, 100000.0, 12};
  const auto r = sharpness_sweep(c);
  CHECK(r.rows.size() % 2 == 0);
  CHECK(r.rows.size() / 2 + r.skipped.size() == 12);
  for (const auto& sk : r.skipped) CHECK_FALSE(sk.reason.empty());
  for (std::size_t i = 0; i + 1 < r.rows.size(); i += 2) {
    CHECK(r.rows[i].n == r.rows[i + 1].n);
    CHECK(r.rows[i].s < r.rows[i + 1].s);
  }
}

TEST_CASE("normal derivative sweep is disk only") {
  SweepConfig c;
  c.kind = SweepKind::NormalDerivative;
  c.domain = Domain::Sphere;
  CHECK_THROWS_AS(normal_derivative_sweep(c), ConfigError);
}

TEST_CASE("normal band check") {
  SweepConfig c;
  c.kind = SweepKind::NormalBand;
  c.grid = {1000.0, 50000.0, 10};
  const auto r = normal_band_check(c);
  REQUIRE(r.rows.size() >= 6);
  for (const auto& row : r.rows) CHECK(row.weighted_norm > 0.0);
  c.beta = 0.7;
  CHECK_THROWS_AS(normal_band_check(c), ConfigError);
}

TEST_CASE("window enumeration") {
  CHECK(disk_window_count(enumerate_disk_window(0.0, 1.0)) == 0);
  const int c200 = disk_window_count(enumerate_disk_window(200.0, 201.0));
  CHECK(c200 == oracle::weyl_count(200.0, 201.0));
  CHECK(std::abs(c200 / disk_weyl_count(200.0, 1.0) - 1.0) < 0.2);
  const int c400 = disk_window_count(enumerate_disk_window(400.0, 401.0));
  CHECK(c400 > 1.6 * c200);
  CHECK(c400 < 2.4 * c200);
  for (const auto& m : enumerate_disk_window(300.0, 301.0)) {
    CHECK(m.lambda >= 300.0);
    CHECK(m.lambda <= 301.0);
  }
}

TEST_CASE("quasimode sweep") {
  SweepConfig c;
  c.kind = SweepKind::Quasimode;
  c.grid = {200.0, 400.0, 3};
  c.trials = 4;
  c.s_list = {0.0, 0.3};
  const auto r = quasimode_boundedness(c);
  REQUIRE(r.rows.size() == 6);
  for (const auto& row : r.rows) {
    CHECK(row.weighted_norm > 0.0);
    CHECK(row.m > 0);
  }
  CHECK(r.diagnostics.count("weyl_ratio_min") == 1);

  const auto again = quasimode_boundedness(c);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].weighted_norm == again.rows[i].weighted_norm);
  SweepConfig other = c;
  other.seed = 2;
  CHECK(quasimode_boundedness(other).rows[0].weighted_norm != r.rows[0].weighted_norm);

  SweepConfig biased = c;
  biased.law = CoefficientLaw::GlancingBiased;
  CHECK(quasimode_boundedness(biased).rows.size() == 6);

  SweepConfig bad = c;
  bad.trials = 0;
  CHECK_THROWS_AS(quasimode_boundedness(bad), ConfigError);
  bad = c;
  bad.domain = Domain::Sphere;
  CHECK_THROWS_AS(quasimode_boundedness(bad), ConfigError);
}

TEST_CASE("thread count") {
  ::setenv("GLANCELAB_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  ::setenv("GLANCELAB_THREADS", "0", 1);
  CHECK(thread_count() >= 1);
  ::setenv("GLANCELAB_THREADS", "two", 1);
  CHECK_THROWS_AS(thread_count(), ConfigError);
  ::unsetenv("GLANCELAB_THREADS");
  CHECK(thread_count() >= 1);
}

TEST_CASE("results do not depend on thread count") {
  SweepConfig c;
  c.kind = SweepKind::Quasimode;
  c.grid = {200.0, 600.0, 4};
  c.trials = 3;
  c.s_list = {0.3};
  ::setenv("GLANCELAB_THREADS", "1", 1);
  const auto one = run_sweep(c);
  ::setenv("GLANCELAB_THREADS", "4", 1);
  const auto four = run_sweep(c);
  ::unsetenv("GLANCELAB_THREADS");
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) CHECK(one.rows[i].weighted_norm == four.rows[i].weighted_norm);
}
