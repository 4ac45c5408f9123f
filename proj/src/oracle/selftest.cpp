#include "glancelab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "glancelab/error.hpp"
#include "glancelab/experiments.hpp"
#include "glancelab/modes.hpp"
#include "glancelab/specfun.hpp"
#include "glancelab/weights.hpp"

namespace glancelab::selftest {

namespace {

using oracle::OracleReport;
namespace sf = glancelab::specfun;

class Check {
 public:
  Check(std::string name, double tolerance) {
    report_.name = std::move(name);
    report_.tolerance = tolerance;
  }

  // Error measured against an explicit scale, so zeros of oscillatory
  // functions do not blow up the relative error.
  void compare(double got, double want, double scale) {
    const double abs_err = std::fabs(got - want);
    const double rel_err = abs_err / scale;
    report_.max_abs_error = std::max(report_.max_abs_error, abs_err);
    report_.max_rel_error = std::max(report_.max_rel_error, std::isnan(rel_err) ? INFINITY : rel_err);
    ++report_.samples;
  }
  void compare(double got, double want) { compare(got, want, std::fabs(want)); }
  void fail(const std::string& why) {
    hard_fail_ = true;
    if (!report_.detail.empty()) report_.detail += "; ";
    report_.detail += why;
  }
  void note(const std::string& text) {
    if (!report_.detail.empty()) report_.detail += "; ";
    report_.detail += text;
  }
  OracleReport finish() {
    report_.passed = !hard_fail_ && report_.samples > 0 && report_.max_rel_error <= report_.tolerance;
    return report_;
  }

 private:
  OracleReport report_;
  bool hard_fail_ = false;
};

double envelope(double x) { return std::sqrt(2.0 / (std::numbers::pi * std::max(x, 1.0))); }

OracleReport airy_series_check() {
  Check c("airy-vs-series", 1e-12);
  for (int i = 0; i <= 100; ++i) {
    const double x = -6.0 + 10.0 * i / 100.0;
    const double ref = oracle::airy_series(x);
    const double scale = x < -1.0 ? std::pow(-x, -0.25) / std::sqrt(std::numbers::pi) : std::fabs(ref);
    c.compare(sf::airy_ai(x), ref, scale);
  }
  return c.finish();
}

OracleReport airy_zero_check() {
  Check c("airy-zeros", 1e-12);
  double prev = 0.0;
  for (int m = 1; m <= 50; ++m) {
    const double a = sf::airy_zero(m).value;
    c.compare(sf::airy_ai(a), 0.0, 1.0);
    const double d = 1e-6 * std::fabs(a);
    if ((sf::airy_ai(a - d) > 0.0) == (sf::airy_ai(a + d) > 0.0)) c.fail("no sign change at m=" + std::to_string(m));
    if (!(a < prev)) c.fail("zeros not decreasing at m=" + std::to_string(m));
    prev = a;
  }
  return c.finish();
}

// |a_m - seed(m)| should decay like m^{-4/3}; the fitted exponent is
// reported in max_rel_error and must be at most -1.2.
OracleReport airy_seed_decay_check() {
  OracleReport r;
  r.name = "airy-zero-seed-decay";
  r.tolerance = -1.2;
  std::vector<double> ms, errs;
  for (int m = 2; m <= 50; ++m) {
    ms.push_back(m);
    errs.push_back(std::fabs(sf::airy_zero(m).value - sf::airy_zero_seed(m)));
  }
  const auto fit = experiments::fit_exponent(ms, errs);
  r.samples = static_cast<int>(ms.size());
  r.max_rel_error = fit.slope;
  r.max_abs_error = std::fabs(sf::airy_zero(1).value - sf::airy_zero_seed(1));
  r.passed = fit.slope <= r.tolerance;
  r.detail = "fitted exponent of |a_m - seed| over m=2..50; error at m=1 in max_abs_error";
  return r;
}

OracleReport olver_roundtrip_check() {
  Check c("olver-roundtrip", 1e-10);
  double prev_z = INFINITY;
  for (int i = 0; i <= 200; ++i) {
    const double zeta = -3.0 + (3.0 - 0.01) * i / 200.0;
    const double z = sf::z_of_zeta(zeta);
    c.compare(sf::zeta_of_z(z), zeta);
    if (!(z < prev_z)) c.fail("z not decreasing in zeta");
    prev_z = z;
  }
  return c.finish();
}

OracleReport olver_ode_check() {
  Check c("olver-ode", 1e-9);
  std::vector<double> grid;
  for (int i = 0; i < 60; ++i) grid.push_back(-0.01 - (3.0 - 0.01) * i / 59.0);
  const double zeta0 = sf::zeta_of_z(2.0);
  grid.push_back(zeta0);
  const auto z_ode = oracle::olver_ode_z(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) c.compare(sf::z_of_zeta(grid[i]), z_ode[i]);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(z_ode[i] > z_ode[i - 1])) c.fail("ODE solution not monotone");
  }
  c.note("z(zeta0)=2 at zeta0=" + std::to_string(zeta0) + ", ODE gives " + std::to_string(z_ode.back()));
  return c.finish();
}

OracleReport bessel_uniform_check() {
  Check c("bessel-uniform-vs-recurrence", 1e-8);
  for (int n : {20, 24, 30, 37, 45, 55, 68, 83, 100, 123, 150, 175, 200}) {
    for (int i = 0; i < 50; ++i) {
      const double x = n * (0.5 + 1.5 * i / 49.0);
      const double ref = oracle::bessel_series(n, x);
      c.compare(sf::bessel_j_uniform(n, x), ref, std::max(std::fabs(ref), std::pow(n, -1.0 / 3.0)));
    }
  }
  return c.finish();
}

OracleReport bessel_small_order_check() {
  Check c("bessel-small-order-vs-recurrence", 1e-11);
  for (int n = 0; n < sf::kUniformMinOrder; ++n) {
    for (int i = 0; i <= 60; ++i) {
      const double x = 400.0 * i / 60.0 + 0.37;
      if (x > oracle::kBesselSeriesMaxX) continue;
      const double ref = oracle::bessel_series(n, x);
      const double scale = x > n ? std::max(std::fabs(ref), envelope(x)) : std::fabs(ref);
      c.compare(sf::bessel_j(n, x), ref, scale > 0.0 ? scale : 1.0);
    }
  }
  return c.finish();
}

OracleReport bessel_zero_check() {
  Check c("bessel-zeros-vs-bisection", 1e-12);
  for (int n = 0; n <= 50; n += (n < 10 ? 1 : 5)) {
    double prev = n;
    for (int m = 1; m <= 10; ++m) {
      const double j = sf::bessel_zero(n, m).value;
      const double ref = oracle::bessel_series_root(n, j - 0.25, j + 0.25);
      c.compare(j, ref);
      const double resid = std::fabs(sf::bessel_j(n, j));
      if (resid > 1e-10 * std::fabs(sf::bessel_j_prime(n, j)) * j) {
        c.fail("residual at n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
      if (!(j > prev)) c.fail("not increasing at n=" + std::to_string(n) + " m=" + std::to_string(m));
      prev = j;
      const double right = sf::bessel_zero(n + 1, m).value;
      const double up = sf::bessel_zero(n, m + 1).value;
      if (!(j < right && right < up)) c.fail("interlacing fails at n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  return c.finish();
}

// |j_{n,m} - n z(n^{-2/3} a_m)| against n; the slope is reported and must
// not exceed -0.8.
OracleReport bessel_seed_decay_check() {
  OracleReport r;
  r.name = "bessel-zero-seed-decay";
  r.tolerance = -0.8;
  r.max_rel_error = -INFINITY;
  for (int m : {1, 2, 5}) {
    std::vector<double> ns, errs;
    for (int n : {100, 200, 400, 800}) {
      ns.push_back(n);
      errs.push_back(std::fabs(sf::bessel_zero(n, m).value - sf::bessel_zero_seed(n, m)));
      ++r.samples;
    }
    const auto fit = experiments::fit_exponent(ns, errs);
    r.max_rel_error = std::max(r.max_rel_error, fit.slope);
    r.max_abs_error = std::max(r.max_abs_error, errs.front());
    r.detail += (r.detail.empty() ? "" : ", ") + std::string("m=") + std::to_string(m) + " slope " +
                std::to_string(fit.slope);
  }
  r.passed = r.max_rel_error <= r.tolerance;
  return r;
}

OracleReport legendre_equator_check() {
  Check c("legendre-equator-vs-recurrence", 1e-10);
  std::mt19937_64 engine(20240901);
  for (int i = 0; i < 100; ++i) {
    const int l = static_cast<int>(engine() % 10001);
    int m = static_cast<int>(engine() % (2 * static_cast<std::uint64_t>(l) + 1)) - l;
    if ((l + m) % 2 != 0) m += (m < l ? 1 : -1);
    const double ref = oracle::legendre_recurrence(l, m, 0.0);
    c.compare(sf::legendre_equator(l, m).value, ref);
  }
  for (int l = 1; l <= 40; ++l) {
    for (int m = -l; m <= l; ++m) {
      if ((l + m) % 2 == 0) continue;
      if (sf::legendre_equator(l, m).value != 0.0) c.fail("odd l+m not zero");
      if (std::fabs(oracle::legendre_recurrence(l, m, 0.0)) > 1e-14) c.fail("recurrence odd l+m not zero");
    }
  }
  return c.finish();
}

OracleReport legendre_addition_check() {
  Check c("legendre-addition-theorem", 1e-10);
  for (int l = 0; l <= 10; ++l) {
    double sum = 0.0;
    for (int m = -l; m <= l; ++m) {
      const double a = sf::legendre_equator(l, m).value;
      sum += a * a;
    }
    c.compare(sum, (2.0 * l + 1.0) / (4.0 * std::numbers::pi));
  }
  return c.finish();
}

OracleReport parseval_check() {
  Check c("trace-parseval", 1e-10);
  std::mt19937_64 engine(7);
  auto unit = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (int trial = 0; trial < 20; ++trial) {
    Trace t{trial % 2 == 0 ? 0.5 : 1.0, 1.0 / (50.0 + trial), {}};
    for (int j = 0; j < 20; ++j) {
      const int k = static_cast<int>(engine() % 121) - 60;
      t.coefficients[k] += std::complex<double>(unit(), unit());
    }
    c.compare(weights::trace_norm(t), oracle::trace_norm_quadrature(t));
    const weights::WeightSpec spec{2.0 / 3.0, 0.3, weights::CutoffShape::ExpGlue};
    const Trace w = weights::apply_weight(t, spec, weights::WeightPart::G);
    c.compare(weights::trace_norm(w), oracle::trace_norm_quadrature(w));
  }
  return c.finish();
}

OracleReport disk_normalization_check() {
  Check c("disk-mode-normalization", 1e-8);
  std::mt19937_64 engine(11);
  for (int i = 0; i < 10; ++i) {
    const int n = static_cast<int>(engine() % 51);
    const int m = 1 + static_cast<int>(engine() % 8);
    const auto d = modes::disk_mode(n, m);
    c.compare(oracle::disk_quadrature_norm(d.n, d.lambda, d.norm_const), 1.0);
  }
  // Orthogonality inside a small spectral window, where modes of equal n
  // differ only radially.
  const auto window = experiments::enumerate_disk_window(20.0, 30.0);
  for (std::size_t a = 0; a < window.size(); ++a) {
    for (std::size_t b = a + 1; b < window.size(); ++b) {
      if (window[a].n != window[b].n) continue;
      c.compare(oracle::disk_quadrature_inner(window[a].n, window[a].lambda, window[a].norm_const,
                                              window[b].lambda, window[b].norm_const),
                0.0, 1.0);
    }
  }
  return c.finish();
}

OracleReport weyl_check() {
  Check c("weyl-count", 0.2);
  const double lo = 200.0, width = 1.0;
  const int brute = oracle::weyl_count(lo, lo + width);
  const int enumerated = experiments::disk_window_count(experiments::enumerate_disk_window(lo, lo + width));
  const double weyl = experiments::disk_weyl_count(lo, width);
  if (brute != enumerated) {
    c.fail("sign-change count " + std::to_string(brute) + " != enumeration " + std::to_string(enumerated));
  }
  c.compare(brute, weyl);
  if (oracle::weyl_count(0.0, 2.0) != 0) c.fail("nonzero count below the first eigenvalue");
  const int doubled = experiments::disk_window_count(experiments::enumerate_disk_window(2 * lo, 2 * lo + width));
  c.note("count " + std::to_string(brute) + ", Weyl " + std::to_string(weyl) + ", at 2L " + std::to_string(doubled));
  return c.finish();
}

}  // namespace

std::vector<OracleReport> run_all() {
  std::vector<OracleReport> out;
  auto guarded = [&](const char* name, OracleReport (*fn)()) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      OracleReport r;
      r.name = name;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
      out.push_back(r);
    }
  };
  guarded("airy-vs-series", airy_series_check);
  guarded("airy-zeros", airy_zero_check);
  guarded("airy-zero-seed-decay", airy_seed_decay_check);
  guarded("olver-roundtrip", olver_roundtrip_check);
  guarded("olver-ode", olver_ode_check);
  guarded("bessel-uniform-vs-recurrence", bessel_uniform_check);
  guarded("bessel-small-order-vs-recurrence", bessel_small_order_check);
  guarded("bessel-zeros-vs-bisection", bessel_zero_check);
  guarded("bessel-zero-seed-decay", bessel_seed_decay_check);
  guarded("legendre-equator-vs-recurrence", legendre_equator_check);
  guarded("legendre-addition-theorem", legendre_addition_check);
  guarded("trace-parseval", parseval_check);
  guarded("disk-mode-normalization", disk_normalization_check);
  guarded("weyl-count", weyl_check);
  return out;
}

bool all_passed(const std::vector<OracleReport>& reports) {
  return !reports.empty() &&
         std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return r.passed; });
}

}  // namespace glancelab::selftest
