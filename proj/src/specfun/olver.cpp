#include <cmath>
#include <numbers>

#include "glancelab/error.hpp"
#include "glancelab/specfun.hpp"
#include "specfun/internal.hpp"

namespace glancelab::specfun {

namespace detail {

namespace {

#include "specfun/olver_tables.inc"

using ld = long double;

// sum_{k>=1} s^k x^{2k+1} / (2k+1) with s = +1 (atanh w - w) or s = -1
// (v - atan v), for |x| < 1/2.
ld odd_tail(ld x, int s) {
  const ld x2 = x * x;
  ld pw = x * x2;
  ld sum = 0.0L;
  ld sign = 1.0L;
  for (int k = 1; k < 80; ++k) {
    const ld term = sign * pw / static_cast<ld>(2 * k + 1);
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum)) break;
    pw *= x2;
    if (s < 0) sign = -sign;
  }
  return sum;
}

constexpr double kTailSwitch = 0.5;

ld poly(const double* c, int n, ld x) {
  ld acc = 0.0L;
  for (int i = n - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

struct AiryCoefficients {
  ld u[6];
  ld v[6];
  constexpr AiryCoefficients() : u{}, v{} {
    u[0] = v[0] = 1.0L;
    for (int k = 1; k < 6; ++k) {
      u[k] = u[k - 1] * static_cast<ld>((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) /
             static_cast<ld>((2 * k - 1) * 216 * k);
      v[k] = -static_cast<ld>(6 * k + 1) / static_cast<ld>(6 * k - 1) * u[k];
    }
  }
};

constexpr AiryCoefficients kAiryCoef{};

}  // namespace

double olver_phase(TurningOffset t) {
  if (t.e == 0.0) return 0.0;
  if (t.e > 0.0) {
    const ld w = std::sqrt(static_cast<ld>(t.e) * (2.0L - t.e));
    return static_cast<double>(w < kTailSwitch ? odd_tail(w, +1) : std::atanh(w) - w);
  }
  const ld u = -static_cast<ld>(t.e);
  return v_minus_atan(static_cast<double>(std::sqrt(u * (2.0L + u))));
}

double v_minus_atan(double v) {
  const ld x = v;
  return static_cast<double>(v < kTailSwitch ? odd_tail(x, -1) : x - std::atan(x));
}

double zeta_of_offset(TurningOffset t) {
  const double mag = std::pow(1.5 * olver_phase(t), 2.0 / 3.0);
  return t.e >= 0.0 ? mag : -mag;
}

OlverCoefficients olver_coefficients_taylor(double zeta) {
  const ld tau = zeta / std::cbrt(2.0L);
  const ld bscale = 1.0L / std::cbrt(4.0L);
  OlverCoefficients out{};
  const double* atab[3] = {kOlverATaylor0, kOlverATaylor1, kOlverATaylor2};
  const double* btab[3] = {kOlverBTaylor0, kOlverBTaylor1, kOlverBTaylor2};
  for (int k = 0; k < 3; ++k) {
    out.a[k] = static_cast<double>(poly(atab[k], 30, tau));
    out.b[k] = static_cast<double>(bscale * poly(btab[k], 30, tau));
  }
  return out;
}

OlverCoefficients olver_coefficients_direct(TurningOffset t, double zeta) {
  const ld one_minus_z2 = static_cast<ld>(t.e) * (2.0L - t.e);
  const ld q = 1.0L / one_minus_z2;
  const ld zl = zeta;
  // w = zeta^{-3/2} p and y = zeta^{-1/2} p continued analytically through
  // the turning point; w > 0 on both sides while y changes sign with 1 - z.
  const ld w = 1.0L / std::sqrt(std::fabs(zl * zl * zl * one_minus_z2));
  const ld y = (t.e > 0 ? 1.0L : -1.0L) / std::sqrt(std::fabs(zl * one_minus_z2));
  ld qpow[12];  // q^{k-j} for k-j in [-6, 5]
  for (int i = 0; i < 12; ++i) qpow[i] = std::pow(q, i - 6);
  ld qk[6];
  for (int k = 0; k < 6; ++k) qk[k] = poly(kDebyeQ[k], 6, q);
  OlverCoefficients out{};
  for (int k = 0; k < 3; ++k) {
    ld acc = 0.0L;
    ld wj = 1.0L, c = 1.0L;
    for (int j = 0; j <= 2 * k; ++j) {
      acc += c * kAiryCoef.v[j] * wj * qpow[k - j + 6] * qk[2 * k - j];
      wj *= w;
      c *= 1.5L;
    }
    out.a[k] = static_cast<double>(acc);
    acc = 0.0L;
    wj = 1.0L;
    c = 1.0L;
    for (int j = 0; j <= 2 * k + 1; ++j) {
      acc += c * kAiryCoef.u[j] * wj * qpow[k - j + 6] * qk[2 * k + 1 - j];
      wj *= w;
      c *= 1.5L;
    }
    out.b[k] = static_cast<double>(-y * acc);
  }
  return out;
}

OlverCoefficients olver_coefficients(TurningOffset t, double zeta) {
  if (std::fabs(zeta) < kOlverTaylorRadius) return olver_coefficients_taylor(zeta);
  return olver_coefficients_direct(t, zeta);
}

}  // namespace detail

double zeta_of_z(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("zeta_of_z: z must be positive and finite");
  return detail::zeta_of_offset({z, 1.0 - z});
}

double z_of_zeta(double zeta) {
  if (!(zeta < 0.0) || !std::isfinite(zeta)) throw DomainError("z_of_zeta: zeta must be negative and finite");
  // Solve g(v) = v - atan(v) = target for v = sqrt(z^2 - 1); g is increasing
  // and convex, with (3 target)^{1/3} <= v <= target + pi/2.
  const double target = 2.0 / 3.0 * std::pow(-zeta, 1.5);
  double lo = std::max(std::cbrt(3.0 * target), target);
  double hi = target + std::numbers::pi / 2.0;
  auto g = [](double v) { return detail::v_minus_atan(v); };
  // Start on the right of the root so Newton descends monotonically.
  double v = target < 1.0 ? std::min(hi, 1.5 * lo) : hi - 1.0 / hi;
  if (g(v) < target) v = hi;
  for (int it = 0; it < 200; ++it) {
    const double gv = g(v) - target;
    if (gv == 0.0) break;
    if (gv > 0.0) hi = std::min(hi, v);
    else lo = std::max(lo, v);
    const double deriv = v * v / (1.0 + v * v);
    double next = v - gv / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - v) <= 1e-16 * v) {
      v = next;
      break;
    }
    v = next;
  }
  return std::sqrt(1.0 + v * v);
}

}  // namespace glancelab::specfun
