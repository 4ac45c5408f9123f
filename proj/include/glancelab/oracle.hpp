#pragma once

#include <string>
#include <vector>

#include "glancelab/trace.hpp"

// Brute-force reference implementations. Nothing here calls into the
// production special functions; the selftest suite compares the two.

namespace glancelab::oracle {

inline constexpr int kBesselSeriesMaxOrder = 200;
inline constexpr double kBesselSeriesMaxX = 400.0;

/// J_n(x) by Miller's backward recurrence normalised with
/// J_0 + 2 sum J_{2k} = 1, in long double. DomainError outside
/// 0 <= n <= 200, 0 <= x <= 400.
double bessel_series(int n, double x);

/// Root of bessel_series(n, .) in [lo, hi] by bisection.
double bessel_series_root(int n, double lo, double hi);

/// Ai(x) from its Maclaurin series (long double, up to 200 terms). Intended
/// for |x| <= 6.
double airy_series(double x);

/// Orthonormal Y_l^m(theta, 0) at x = cos(theta), Condon-Shortley phase,
/// by the m-upward / l-upward recurrence with running exponent rescaling,
/// so l up to 10^4 neither overflows nor underflows.
double legendre_recurrence(int l, int m, double x);

/// ||c J_n(lambda r) e^{i n theta}||_{L^2(unit disk)} by adaptive
/// Gauss-Kronrod in r (n <= 50).
double disk_quadrature_norm(int n, double lambda, double norm_const);

/// <u_1, u_2> for two modes with the same angular order.
double disk_quadrature_inner(int n, double lambda1, double c1, double lambda2, double c2);

/// z(zeta) on the given grid (zeta < 0) from Dormand-Prince integration
/// of (dzeta/dz)^2 = (1 - z^2)/(zeta z^2), started from the two-term
/// Taylor expansion at z = 1.
std::vector<double> olver_ode_z(const std::vector<double>& zeta_grid);

/// Disk Dirichlet eigenvalues in [lo, hi] counted by sign changes of
/// bessel_series on a fine grid, with multiplicity 2 for n > 0.
int weyl_count(double lo, double hi);

/// ||f||_{L^2} on the circle of radius R by the trapezoid rule on
/// 4 max|k| (at least 8) points.
double trace_norm_quadrature(const Trace& trace);

struct OracleReport {
  std::string name;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  int samples = 0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

}  // namespace glancelab::oracle
