#pragma once

// Special functions at large order: Airy function and zeros, Olver's
// variables for the Bessel equation, the uniform Airy-type expansion of J_n,
// Bessel zeros and associated Legendre values on the equator.
//
// Everything here is a pure function of its arguments.

namespace glancelab::specfun {

/// Orders at or above this use the uniform expansion; below it the
/// small-order backend (ascending series / periodic trapezoid rule).
inline constexpr int kUniformMinOrder = 20;

struct AiryValue {
  double ai;
  double aip;  // Ai'
};

struct AiryZero {
  int index;
  double value;
};

struct OlverVariables {
  double z;
  double zeta;
};

struct BesselZero {
  int order;
  int index;
  double value;
};

struct EquatorAmplitude {
  int degree;
  int order;
  double value;  // signed; exactly 0 when degree+order is odd
};

double airy_ai(double x);
AiryValue airy(double x);

/// Leading asymptotic location -((3/8) pi (4m-1))^{2/3} of the m-th zero.
double airy_zero_seed(int m);

/// m-th zero of Ai, seeded by airy_zero_seed and Newton-refined.
/// Throws RefinementError if Newton does not converge.
AiryZero airy_zero(int m);

/// (2/3) zeta^{3/2} = atanh(w) - w, w = sqrt(1-z^2), for z < 1 and
/// (2/3)(-zeta)^{3/2} = sqrt(z^2-1) - arccos(1/z) for z > 1.
double zeta_of_z(double z);

/// Inverse of zeta_of_z on zeta < 0 (so z > 1). DomainError for zeta >= 0.
double z_of_zeta(double zeta);

inline OlverVariables olver_variables(double zeta) { return {z_of_zeta(zeta), zeta}; }

/// Olver's uniform expansion of J_n(x), with the coefficient functions
/// A_0..A_2 and B_0..B_2. Intended for n >= kUniformMinOrder; accuracy at
/// n = 20 is about 1e-11 relative to max(|J|, n^{-1/3}) and improves like
/// n^{-5} from there. DomainError for x <= 0 or n < 1.
double bessel_j_uniform(int n, double x);

/// J_n(x) for any integer n and x >= 0, dispatching between the uniform
/// expansion and the small-order backend.
double bessel_j(int n, double x);

/// J_n'(x) = J_{n-1}(x) - (n/x) J_n(x).
double bessel_j_prime(int n, double x);

/// Uniform leading-order zero location n z(n^{-2/3} a_m); McMahon's
/// expansion for n = 0.
double bessel_zero_seed(int n, int m);

/// m-th positive zero of J_n, refined by safeguarded Newton.
BesselZero bessel_zero(int n, int m);

/// Real-valued estimate of the zero counting function: the m-th zero of J_n
/// sits near the x where this returns m. Exact up to O(1/n).
double bessel_zero_index_estimate(int n, double x);

/// Y_l^m(theta, pi/2) = A_l e^{i m theta}; returns A_l. DomainError if
/// |m| > l or l < 0.
EquatorAmplitude legendre_equator(int l, int m);

}  // namespace glancelab::specfun
