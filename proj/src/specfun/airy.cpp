#include <cmath>
#include <numbers>

#include "glancelab/error.hpp"
#include "glancelab/specfun.hpp"
#include "specfun/internal.hpp"

namespace glancelab::specfun {

namespace {

using ld = long double;

constexpr ld kAi0 = 0.3550280538878172392600632L;   // 3^{-2/3} / Gamma(2/3)
constexpr ld kAip0 = -0.2588194037928067984051836L; // -3^{-1/3} / Gamma(1/3)

// Maclaurin/Taylor crossovers. Below kNegativeCut and above kPositiveFar the
// asymptotic expansions are exact to rounding; between kPositiveNear and
// kPositiveFar Ai is integrated backwards (the stable direction).
constexpr double kNegativeCut = -8.0;
constexpr double kPositiveNear = 3.0;
constexpr double kPositiveFar = 10.0;
constexpr ld kStep = 0.5L;

struct Pair {
  ld y;
  ld yp;
};

// One Taylor step of y'' = x y from x0 to x0 + h.
Pair taylor_step(ld x0, Pair start, ld h) {
  if (h == 0.0L) return start;
  const ld eps = 1e-21L;
  const ld h2 = h * h;
  const ld h3 = h2 * h;
  // d[n] = c_n h^n with c_{n+2} = (x0 c_n + c_{n-1}) / ((n+1)(n+2))
  ld dm1 = 0.0L;       // d_{n-1}
  ld d0 = start.y;     // d_n
  ld d1 = start.yp * h;  // d_{n+1}
  ld y = d0 + d1;
  ld yp = d1;  // sum n d_n, divided by h at the end
  int quiet = 0;
  for (int n = 0; n < 2000; ++n) {
    const ld d2 = (x0 * d0 * h2 + dm1 * h3) / static_cast<ld>((n + 1) * (n + 2));
    y += d2;
    yp += static_cast<ld>(n + 2) * d2;
    const ld mag = std::fabs(d2) * static_cast<ld>(n + 2);
    if (mag <= eps * (std::fabs(y) + std::fabs(yp))) {
      if (++quiet >= 3 && n > 8) break;
    } else {
      quiet = 0;
    }
    dm1 = d0;
    d0 = d1;
    d1 = d2;
  }
  return {y, yp / h};
}

constexpr int kMaxAsymptoticTerms = 60;

// u_k, v_k of the Airy asymptotic expansions; u_k grows factorially so the
// table stops well before overflow.
struct AsymptoticCoefficients {
  ld u[kMaxAsymptoticTerms];
  ld v[kMaxAsymptoticTerms];
  constexpr AsymptoticCoefficients() : u{}, v{} {
    u[0] = 1.0L;
    v[0] = 1.0L;
    for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
      u[k] = u[k - 1] * static_cast<ld>((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) /
             static_cast<ld>((2 * k - 1) * 216 * k);
      v[k] = -static_cast<ld>(6 * k + 1) / static_cast<ld>(6 * k - 1) * u[k];
    }
  }
};

constexpr AsymptoticCoefficients kAsym{};

const ld kSqrtPi = std::sqrt(std::numbers::pi_v<ld>);

Pair asymptotic_positive(ld x) {
  const ld zeta = 2.0L / 3.0L * x * std::sqrt(x);
  ld su = 0.0L, sv = 0.0L, pw = 1.0L, last = INFINITY;
  for (int k = 0; k < kMaxAsymptoticTerms; ++k) {
    const ld tu = kAsym.u[k] * pw;
    if (std::fabs(tu) > last) break;
    const ld sign = (k % 2 == 0) ? 1.0L : -1.0L;
    su += sign * tu;
    sv += sign * kAsym.v[k] * pw;
    last = std::fabs(tu);
    if (last < 1e-22L) break;
    pw /= zeta;
  }
  const ld q = std::sqrt(std::sqrt(x));
  const ld e = std::exp(-zeta) / (2.0L * kSqrtPi);
  return {e * su / q, -e * q * sv};
}

Pair asymptotic_negative(ld x) {
  const ld t = -x;
  const ld zeta = 2.0L / 3.0L * t * std::sqrt(t);
  ld pu = 0.0L, qu = 0.0L, pv = 0.0L, qv = 0.0L, pw = 1.0L, last = INFINITY;
  for (int k = 0; k < kMaxAsymptoticTerms; ++k) {
    const ld tu = kAsym.u[k] * pw;
    if (std::fabs(tu) > last) break;
    const ld sign = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) {
      pu += sign * tu;
      pv += sign * kAsym.v[k] * pw;
    } else {
      qu += sign * tu;
      qv += sign * kAsym.v[k] * pw;
    }
    last = std::fabs(tu);
    if (last < 1e-22L) break;
    pw /= zeta;
  }
  const ld phase = zeta - std::numbers::pi_v<ld> / 4.0L;
  const ld c = std::cos(phase);
  const ld s = std::sin(phase);
  const ld q = std::sqrt(std::sqrt(t));
  return {(c * pu + s * qu) / (kSqrtPi * q), q / kSqrtPi * (s * pv - c * qv)};
}

Pair airy_ld(ld x) {
  if (x < kNegativeCut) return asymptotic_negative(x);
  if (x <= kPositiveNear) return taylor_step(0.0L, {kAi0, kAip0}, x);
  if (x >= kPositiveFar) return asymptotic_positive(x);
  Pair p = asymptotic_positive(kPositiveFar);
  const int steps = static_cast<int>(std::ceil((kPositiveFar - x) / kStep));
  const ld h = (x - static_cast<ld>(kPositiveFar)) / steps;
  ld at = kPositiveFar;
  for (int i = 0; i < steps; ++i) {
    p = taylor_step(at, p, h);
    at += h;
  }
  return p;
}

}  // namespace

AiryValue airy(double x) {
  const Pair p = airy_ld(x);
  return {static_cast<double>(p.y), static_cast<double>(p.yp)};
}

double airy_ai(double x) { return static_cast<double>(airy_ld(x).y); }

double airy_zero_seed(int m) {
  if (m < 1) throw DomainError("airy_zero_seed: index must be >= 1");
  const double t = 3.0 / 8.0 * std::numbers::pi * (4.0 * m - 1.0);
  return -std::pow(t, 2.0 / 3.0);
}

AiryZero airy_zero(int m) {
  const double seed = airy_zero_seed(m);
  double x = seed;
  bool polished = false;
  for (int it = 0; it < detail::kMaxNewtonIterations; ++it) {
    const AiryValue v = airy(x);
    if (v.aip == 0.0) break;
    const double dx = v.ai / v.aip;
    x -= dx;
    if (std::fabs(dx) <= detail::kNewtonRelTol * std::fabs(x)) {
      if (polished) return {m, x};
      polished = true;
    }
  }
  throw RefinementError("airy_zero: Newton did not converge for m=" + std::to_string(m), seed);
}

}  // namespace glancelab::specfun
