#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>

#include "glancelab/error.hpp"
#include "glancelab/oracle.hpp"

namespace glancelab::oracle {

namespace {

using ld = long double;

constexpr ld kPi = std::numbers::pi_v<ld>;

// Kronrod 15-point nodes/weights with the embedded 7-point Gauss rule.
constexpr std::array<ld, 8> kXgk = {0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
                                    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
                                    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
                                    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr std::array<ld, 8> kWgk = {0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
                                    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
                                    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
                                    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr std::array<ld, 4> kWg = {0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                                   0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Piece {
  ld value;
  ld error;
};

Piece gk15(const std::function<ld(ld)>& f, ld a, ld b) {
  const ld c = 0.5L * (a + b);
  const ld hw = 0.5L * (b - a);
  const ld fc = f(c);
  ld k = fc * kWgk[7];
  ld g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const ld dx = hw * kXgk[j];
    const ld s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {k * hw, std::fabs((k - g) * hw)};
}

ld adaptive(const std::function<ld(ld)>& f, ld a, ld b, ld tol, int depth) {
  const Piece whole = gk15(f, a, b);
  if (whole.error <= tol || depth >= 40) {
    if (whole.error > tol && depth >= 40) throw NumericalError("oracle quadrature did not converge");
    return whole.value;
  }
  const ld m = 0.5L * (a + b);
  return adaptive(f, a, m, 0.5L * tol, depth + 1) + adaptive(f, m, b, 0.5L * tol, depth + 1);
}

// Splits [0, 1] into panels no longer than about half an oscillation.
ld integrate_radial(const std::function<ld(ld)>& f, ld lambda) {
  const int panels = std::max(4, static_cast<int>(std::ceil(lambda / 2.0L)));
  ld total = 0.0L;
  for (int i = 0; i < panels; ++i) {
    total += adaptive(f, static_cast<ld>(i) / panels, static_cast<ld>(i + 1) / panels, 1e-17L, 0);
  }
  return total;
}

ld bessel_ld(int n, ld x) {
  if (x == 0.0L) return n == 0 ? 1.0L : 0.0L;
  const int top = std::max(n, static_cast<int>(x));
  int start = top + 30 + static_cast<int>(std::sqrt(60.0L * top));
  if (start % 2 != 0) ++start;
  ld next = 0.0L;  // J_{k+1}
  ld cur = 1e-300L;   // J_k
  ld sum = 0.0L;
  ld want = 0.0L;
  for (int k = start; k > 0; --k) {
    const ld prev = 2.0L * k / x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == n) want = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) sum += 2.0L * cur;
    if (std::fabs(cur) > 1e300L) {
      cur *= 1e-300L;
      next *= 1e-300L;
      sum *= 1e-300L;
      want *= 1e-300L;
    }
  }
  sum += cur;  // J_0
  return want / sum;
}

}  // namespace

double bessel_series(int n, double x) {
  if (n < 0 || n > kBesselSeriesMaxOrder || !(x >= 0.0) || x > kBesselSeriesMaxX) {
    throw DomainError("bessel_series: outside 0 <= n <= 200, 0 <= x <= 400 (n=" + std::to_string(n) +
                      ", x=" + std::to_string(x) + ")");
  }
  return static_cast<double>(bessel_ld(n, x));
}

double bessel_series_root(int n, double lo, double hi) {
  double flo = bessel_series(n, lo);
  const double fhi = bessel_series(n, hi);
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("bessel_series_root: no sign change");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = bessel_series(n, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double airy_series(double xd) {
  const ld x = xd;
  const ld x3 = x * x * x;
  // Ai = c1 f - c2 g with f = sum 3^k (1/3)_k x^{3k}/(3k)!,
  // g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!.
  const ld c1 = 0.355028053887817239260063186004183L;
  const ld c2 = 0.258819403792806798405183560189203L;
  ld tf = 1.0L, tg = x;
  ld f = tf, g = tg;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::fabs(tf) + std::fabs(tg) < 1e-24L * (std::fabs(f) + std::fabs(g))) break;
  }
  return static_cast<double>(c1 * f - c2 * g);
}

double legendre_recurrence(int l, int m, double xd) {
  if (l < 0 || std::abs(m) > l) throw DomainError("legendre_recurrence: need |m| <= l");
  if (!(xd >= -1.0 && xd <= 1.0)) throw DomainError("legendre_recurrence: need |x| <= 1");
  const int am = std::abs(m);
  const ld x = xd;
  const ld s2 = 1.0L - x * x;
  // Value = mantissa * exp(log_scale); the mantissa is renormalised as it goes.
  ld log_scale = 0.5L * std::log((2.0L * am + 1.0L) / (4.0L * kPi));
  for (int k = 1; k <= am; ++k) log_scale += 0.5L * std::log((2.0L * k - 1.0L) / (2.0L * k));
  if (am > 0) {
    if (s2 == 0.0L) return 0.0;
    log_scale += 0.5L * am * std::log(s2);
  }
  ld p_prev = 0.0L;
  ld p = (am % 2 == 0) ? 1.0L : -1.0L;
  for (int k = am + 1; k <= l; ++k) {
    const ld kk = k;
    const ld a = std::sqrt((4.0L * kk * kk - 1.0L) / (kk * kk - static_cast<ld>(am) * am));
    const ld b = (k == am + 1) ? 0.0L
                               : std::sqrt(((kk - 1.0L) * (kk - 1.0L) - static_cast<ld>(am) * am) /
                                           (4.0L * (kk - 1.0L) * (kk - 1.0L) - 1.0L));
    const ld next = a * (x * p - b * p_prev);
    p_prev = p;
    p = next;
    const ld mag = std::fabs(p) + std::fabs(p_prev);
    if (mag > 1e100L || (mag < 1e-100L && mag > 0.0L)) {
      const ld r = 1.0L / mag;
      p *= r;
      p_prev *= r;
      log_scale += std::log(mag);
    }
  }
  ld value = 0.0L;
  if (p != 0.0L) value = (p > 0 ? 1.0L : -1.0L) * std::exp(std::log(std::fabs(p)) + log_scale);
  if (m < 0 && am % 2 != 0) value = -value;
  return static_cast<double>(value);
}

double disk_quadrature_inner(int n, double lambda1, double c1, double lambda2, double c2) {
  if (n < 0 || n > 50) throw DomainError("disk quadrature oracle covers 0 <= n <= 50");
  const ld l1 = lambda1, l2 = lambda2;
  auto f = [&](ld r) { return bessel_ld(n, l1 * r) * bessel_ld(n, l2 * r) * r; };
  const ld radial = integrate_radial(f, std::max(l1, l2));
  return static_cast<double>(2.0L * kPi * static_cast<ld>(c1) * static_cast<ld>(c2) * radial);
}

double disk_quadrature_norm(int n, double lambda, double norm_const) {
  return std::sqrt(disk_quadrature_inner(n, lambda, norm_const, lambda, norm_const));
}

std::vector<double> olver_ode_z(const std::vector<double>& zeta_grid) {
  for (double zt : zeta_grid) {
    if (!(zt < 0.0)) throw DomainError("olver_ode_z: grid must be negative");
  }
  std::vector<double> sorted = zeta_grid;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // dz/dzeta on the branch z > 1, zeta < 0.
  auto rhs = [](ld zeta, ld z) { return -z * std::sqrt(-zeta) / std::sqrt(z * z - 1.0L); };
  const ld cbrt2 = std::cbrt(2.0L);
  ld zeta = -1e-5L;
  if (!sorted.empty()) zeta = std::max<ld>(0.5L * sorted.front(), zeta);
  const ld t = zeta / cbrt2;
  ld z = 1.0L - t + 0.3L * t * t;

  // Dormand-Prince 5(4).
  constexpr ld a21 = 1.0L / 5, a31 = 3.0L / 40, a32 = 9.0L / 40, a41 = 44.0L / 45, a42 = -56.0L / 15,
               a43 = 32.0L / 9, a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561,
               a54 = -212.0L / 729, a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
               a64 = 49.0L / 176, a65 = -5103.0L / 18656, b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
               b5 = -2187.0L / 6784, b6 = 11.0L / 84, e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920,
               e5 = -17253.0L / 339200, e6 = 22.0L / 525, e7 = -1.0L / 40;
  std::vector<double> out_sorted;
  ld step = -1e-6L;
  const ld tol = 1e-15L;
  for (double target_d : sorted) {
    const ld target = target_d;
    while (zeta > target) {
      if (zeta + step < target) step = target - zeta;
      const ld k1 = rhs(zeta, z);
      const ld k2 = rhs(zeta + step * a21, z + step * a21 * k1);
      const ld k3 = rhs(zeta + step * 0.3L, z + step * (a31 * k1 + a32 * k2));
      const ld k4 = rhs(zeta + step * 0.8L, z + step * (a41 * k1 + a42 * k2 + a43 * k3));
      const ld k5 = rhs(zeta + step * 8.0L / 9.0L, z + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const ld k6 = rhs(zeta + step, z + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const ld z5 = z + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const ld k7 = rhs(zeta + step, z5);
      const ld err = std::fabs(step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
      const ld scale = tol * std::max<ld>(1.0L, std::fabs(z5 - 1.0L));
      if (err <= scale || std::fabs(step) < 1e-18L) {
        zeta += step;
        z = z5;
      }
      const ld factor = err > 0 ? 0.9L * std::pow(scale / err, 0.2L) : 4.0L;
      step *= std::clamp<ld>(factor, 0.2L, 4.0L);
    }
    out_sorted.push_back(static_cast<double>(z));
  }
  std::vector<double> out(zeta_grid.size());
  for (std::size_t i = 0; i < zeta_grid.size(); ++i) {
    const auto pos = std::find(sorted.begin(), sorted.end(), zeta_grid[i]) - sorted.begin();
    out[i] = out_sorted[static_cast<std::size_t>(pos)];
  }
  return out;
}

int weyl_count(double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) throw DomainError("weyl_count: need 0 <= lo < hi");
  if (hi > kBesselSeriesMaxX) throw DomainError("weyl_count: window beyond the series oracle range");
  constexpr double kStep = 0.01;
  int count = 0;
  for (int n = 0; n < hi && n <= kBesselSeriesMaxOrder; ++n) {
    const int steps = static_cast<int>(std::ceil((hi - lo) / kStep));
    double prev = bessel_series(n, lo);
    int zeros = 0;
    for (int i = 1; i <= steps; ++i) {
      const double x = std::min(hi, lo + i * kStep);
      const double f = bessel_series(n, x);
      if ((f > 0.0) != (prev > 0.0) && prev != 0.0) ++zeros;
      prev = f;
    }
    count += (n == 0 ? 1 : 2) * zeros;
  }
  return count;
}

double trace_norm_quadrature(const Trace& trace) {
  int kmax = 0;
  for (const auto& [k, a] : trace.coefficients) kmax = std::max(kmax, std::abs(k));
  const int points = std::max(8, 4 * kmax);
  ld sum = 0.0L;
  for (int j = 0; j < points; ++j) {
    const ld theta = 2.0L * kPi * j / points;
    std::complex<ld> f{};
    for (const auto& [k, a] : trace.coefficients) {
      f += std::complex<ld>(a.real(), a.imag()) * std::polar(1.0L, k * theta);
    }
    sum += std::norm(f);
  }
  return static_cast<double>(std::sqrt(sum * 2.0L * kPi * trace.radius / points));
}

}  // namespace glancelab::oracle
