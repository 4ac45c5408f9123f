#pragma once

// Pieces of the special-function layer shared between translation units but
// not part of the public surface.

namespace glancelab::specfun::detail {

inline constexpr double kNewtonRelTol = 1e-12;
inline constexpr int kMaxNewtonIterations = 50;

/// z together with e = 1 - z, so that callers near the turning point can
/// supply 1 - z without cancellation.
struct TurningOffset {
  double z;
  double e;
};

/// (2/3)|zeta|^{3/2} as a function of z, evaluated without cancellation.
double olver_phase(TurningOffset t);

/// v - atan(v) for v >= 0, series for small v.
double v_minus_atan(double v);

/// zeta(z) from an accurately known 1 - z.
double zeta_of_offset(TurningOffset t);

struct OlverCoefficients {
  double a[3];
  double b[3];
};

/// A_k(zeta), B_k(zeta), k = 0..2. Taylor series about the turning point for
/// |zeta| < kOlverTaylorRadius, closed forms in Debye polynomials elsewhere.
OlverCoefficients olver_coefficients(TurningOffset t, double zeta);
OlverCoefficients olver_coefficients_direct(TurningOffset t, double zeta);
OlverCoefficients olver_coefficients_taylor(double zeta);

inline constexpr double kOlverTaylorRadius = 0.5;

/// Small-order backend for J_n, n >= 0.
double bessel_j_small_order(int n, double x);

}  // namespace glancelab::specfun::detail
