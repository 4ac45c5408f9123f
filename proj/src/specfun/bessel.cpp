#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glancelab/error.hpp"
#include "glancelab/specfun.hpp"
#include "specfun/internal.hpp"

namespace glancelab::specfun {

namespace detail {

namespace {

using ld = long double;

ld ascending_series(int n, ld x) {
  const ld half = x / 2.0L;
  ld lead = 1.0L;
  for (int k = 1; k <= n; ++k) lead *= half / k;
  const ld q = -half * half;
  ld term = lead;
  ld sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<ld>(k) * (n + k));
    sum += term;
    if (k > half && std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return sum;
}

// J_n(x) = (1/2pi) int_0^{2pi} cos(n t - x sin t) dt. The N-point rule is
// exact up to the aliased orders J_{n +- N}(x), negligible once N - n
// clears x by a few multiples of x^{1/3}.
ld periodic_trapezoid(int n, ld x) {
  const int points = n + static_cast<int>(std::ceil(x + 12.0L * std::cbrt(x))) + 32;
  const ld step = 2.0L * std::numbers::pi_v<ld> / points;
  ld sum = 0.0L;
  for (int j = 0; j < points; ++j) {
    const ld t = step * j;
    sum += std::cos(n * t - x * std::sin(t));
  }
  return sum / points;
}

}  // namespace

double bessel_j_small_order(int n, double x) {
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= std::max(12.0, static_cast<double>(n))) return static_cast<double>(ascending_series(n, x));
  return static_cast<double>(periodic_trapezoid(n, x));
}

}  // namespace detail

double bessel_j_uniform(int n, double x) {
  if (n < 1) throw DomainError("bessel_j_uniform: order must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_j_uniform: x must be positive and finite");
  const double nu = n;
  const detail::TurningOffset t{x / nu, (nu - x) / nu};
  const double zeta = detail::zeta_of_offset(t);
  const double nu23 = std::cbrt(nu * nu);
  const double arg = nu23 * zeta;
  // Ai underflows well before this.
  if (arg > 200.0) return 0.0;
  const double one_minus_z2 = t.e * (2.0 - t.e);
  const double prefactor = (t.e == 0.0) ? std::cbrt(2.0) : std::sqrt(std::sqrt(4.0 * zeta / one_minus_z2));
  const AiryValue ai = airy(arg);
  const detail::OlverCoefficients c = detail::olver_coefficients(t, zeta);
  const double inv2 = 1.0 / (nu * nu);
  const double sum_a = c.a[0] + inv2 * (c.a[1] + inv2 * c.a[2]);
  const double sum_b = c.b[0] + inv2 * (c.b[1] + inv2 * c.b[2]);
  const double nu13 = std::cbrt(nu);
  return prefactor * (ai.ai / nu13 * sum_a + ai.aip / (nu * nu23) * sum_b);
}

double bessel_j(int n, double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j: x must be non-negative and finite");
  if (n < 0) {
    const double v = bessel_j(-n, x);
    return (n % 2 == 0) ? v : -v;
  }
  if (n >= kUniformMinOrder) return x == 0.0 ? 0.0 : bessel_j_uniform(n, x);
  return detail::bessel_j_small_order(n, x);
}

double bessel_j_prime(int n, double x) {
  if (n < 0) {
    const double v = bessel_j_prime(-n, x);
    return (n % 2 == 0) ? v : -v;
  }
  if (n == 0) return -bessel_j(1, x);
  if (x == 0.0) return n == 1 ? 0.5 : 0.0;
  return bessel_j(n - 1, x) - n / x * bessel_j(n, x);
}

double bessel_zero_seed(int n, int m) {
  if (n < 0 || m < 1) throw DomainError("bessel_zero_seed: need n >= 0, m >= 1");
  if (n == 0) {
    const double beta = (m - 0.25) * std::numbers::pi;
    const double b8 = 8.0 * beta;
    return beta + 1.0 / b8 - 124.0 / (3.0 * b8 * b8 * b8);
  }
  const double nu = n;
  return nu * z_of_zeta(airy_zero(m).value / std::cbrt(nu * nu));
}

double bessel_zero_index_estimate(int n, double x) {
  if (x <= 0.0) return 0.0;
  if (n == 0) return x / std::numbers::pi + 0.25;
  const double nu = std::abs(n);
  if (x <= nu) return 0.0;
  return nu * detail::olver_phase({x / nu, (nu - x) / nu}) / std::numbers::pi + 0.25;
}

BesselZero bessel_zero(int n, int m) {
  if (n < 0 || m < 1) throw DomainError("bessel_zero: need n >= 0, m >= 1");
  const double seed = bessel_zero_seed(n, m);
  const double next = bessel_zero_seed(n, m + 1);
  double lo = 0.0;
  if (m == 1) {
    lo = std::max(seed - 0.5 * (next - seed), static_cast<double>(n));
  } else {
    lo = 0.5 * (seed + bessel_zero_seed(n, m - 1));
  }
  double hi = 0.5 * (seed + next);
  const double f_lo = bessel_j(n, lo);
  const double f_hi = bessel_j(n, hi);
  if (f_lo == 0.0) return {n, m, lo};
  if (f_hi == 0.0) return {n, m, hi};
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw RefinementError("bessel_zero: seeds do not bracket zero m=" + std::to_string(m) +
                              " of order n=" + std::to_string(n),
                          seed);
  }
  const bool lo_positive = f_lo > 0.0;
  double x = seed;
  bool polished = false;
  for (int it = 0; it < detail::kMaxNewtonIterations; ++it) {
    const double f = bessel_j(n, x);
    if (f == 0.0) return {n, m, x};
    if ((f > 0.0) == lo_positive) lo = x;
    else hi = x;
    const double fp = bessel_j_prime(n, x);
    double step_to = (fp != 0.0) ? x - f / fp : 0.5 * (lo + hi);
    if (!(step_to >= lo && step_to <= hi)) step_to = 0.5 * (lo + hi);
    const double dx = std::fabs(step_to - x);
    x = step_to;
    if (dx <= detail::kNewtonRelTol * x) {
      if (polished) return {n, m, x};
      polished = true;
    }
  }
  throw RefinementError("bessel_zero: no convergence for m=" + std::to_string(m) +
                            " of order n=" + std::to_string(n),
                        seed);
}

}  // namespace glancelab::specfun
