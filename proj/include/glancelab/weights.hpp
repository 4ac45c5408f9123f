#pragma once

#include <string>
#include <string_view>

#include "glancelab/trace.hpp"

// Fractional spectral weights G_1, G_2, G built from a cutoff pair
// chi_1 + chi_2 = 1, applied to traces as Fourier multipliers of
// 1 + h^2 Delta_H, plus the sharp band indicator of -h^2 Delta_H.

namespace glancelab::weights {

/// Transition of chi_1 on [1, 2]. Both are exactly 0 below 1 and exactly 1
/// above 2.
enum class CutoffShape {
  ExpGlue,     // f(t-1) / (f(t-1) + f(2-t)), f(u) = exp(-1/u): C-infinity
  Smoothstep,  // quintic 6u^5 - 15u^4 + 10u^3: C^2, for sensitivity runs
};

std::string_view to_string(CutoffShape shape);
CutoffShape cutoff_from_string(std::string_view name);

struct WeightSpec {
  double rho = 2.0 / 3.0;
  double s = 0.25;
  CutoffShape shape = CutoffShape::ExpGlue;
};

struct BandSpec {
  double rho1 = 0.3;
  double rho2 = 0.6;
};

enum class WeightPart { G1, G2, G };

double chi1(CutoffShape shape, double t);
double chi2(CutoffShape shape, double t);

/// sigma^s chi_1(sigma / h^rho); exactly 0 for sigma <= h^rho.
double g1(const WeightSpec& spec, double h, double sigma);
/// h^{s rho} chi_2(sigma / h^rho); exactly 0 for sigma >= 2 h^rho.
double g2(const WeightSpec& spec, double h, double sigma);
double g(const WeightSpec& spec, double h, double sigma);
double weight(const WeightSpec& spec, WeightPart part, double h, double sigma);

/// Eigenvalue 1 - (h k / R)^2 of 1 + h^2 Delta_H on e^{i k theta}.
double sigma_of(int k, double h, double radius);

Trace apply_weight(const Trace& trace, const WeightSpec& spec, WeightPart part = WeightPart::G1);

/// Keeps k iff (h k / R)^2 lies in [1 - h^{rho1}, 1 - h^{rho2}].
Trace apply_band(const Trace& trace, const BandSpec& band);
bool in_band(const BandSpec& band, int k, double h, double radius);

/// sqrt(2 pi R sum_k |a_k|^2).
double trace_norm(const Trace& trace);

/// (1 - |xi'|^2)^{1/2 - s} on |xi'| < 1, 0 outside: the limiting density of
/// G^{rho,s}-weighted traces of equidistributed eigenfunctions.
double limit_density(double xi_tangential, double s);

/// Stable identifier of the cutoff pair with its parameters, for manifests.
std::string cutoff_identifier(CutoffShape shape);

}  // namespace glancelab::weights
