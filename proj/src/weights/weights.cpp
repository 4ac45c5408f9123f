#include "glancelab/weights.hpp"

#include <cmath>
#include <numbers>

#include "glancelab/error.hpp"

namespace glancelab::weights {

namespace {

double glue(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

std::string_view to_string(CutoffShape shape) {
  switch (shape) {
    case CutoffShape::ExpGlue: return "exp-glue";
    case CutoffShape::Smoothstep: return "smoothstep";
  }
  return "unknown";
}

CutoffShape cutoff_from_string(std::string_view name) {
  if (name == "exp-glue") return CutoffShape::ExpGlue;
  if (name == "smoothstep") return CutoffShape::Smoothstep;
  throw ConfigError("unknown cutoff shape '" + std::string(name) + "'");
}

double chi1(CutoffShape shape, double t) {
  if (t <= 1.0) return 0.0;
  if (t >= 2.0) return 1.0;
  const double u = t - 1.0;
  if (shape == CutoffShape::Smoothstep) return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
  const double a = glue(u);
  return a / (a + glue(1.0 - u));
}

double chi2(CutoffShape shape, double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double u = t - 1.0;
  if (shape == CutoffShape::Smoothstep) return 1.0 - chi1(shape, t);
  // Same quotient with the roles swapped, so chi1 + chi2 = 1 to rounding
  // without cancellation near either end.
  const double b = glue(1.0 - u);
  return b / (glue(u) + b);
}

double g1(const WeightSpec& spec, double h, double sigma) {
  const double scale = std::pow(h, spec.rho);
  if (sigma <= scale) return 0.0;
  return std::pow(sigma, spec.s) * chi1(spec.shape, sigma / scale);
}

double g2(const WeightSpec& spec, double h, double sigma) {
  const double scale = std::pow(h, spec.rho);
  if (sigma >= 2.0 * scale) return 0.0;
  return std::pow(h, spec.s * spec.rho) * chi2(spec.shape, sigma / scale);
}

double g(const WeightSpec& spec, double h, double sigma) { return g1(spec, h, sigma) + g2(spec, h, sigma); }

double weight(const WeightSpec& spec, WeightPart part, double h, double sigma) {
  switch (part) {
    case WeightPart::G1: return g1(spec, h, sigma);
    case WeightPart::G2: return g2(spec, h, sigma);
    case WeightPart::G: return g(spec, h, sigma);
  }
  return 0.0;
}

double sigma_of(int k, double h, double radius) {
  const double x = h * k / radius;
  return 1.0 - x * x;
}

Trace apply_weight(const Trace& trace, const WeightSpec& spec, WeightPart part) {
  Trace out{trace.radius, trace.h, {}};
  for (const auto& [k, a] : trace.coefficients) {
    out.coefficients[k] = weight(spec, part, trace.h, sigma_of(k, trace.h, trace.radius)) * a;
  }
  return out;
}

bool in_band(const BandSpec& band, int k, double h, double radius) {
  const double x = h * k / radius;
  const double x2 = x * x;
  return x2 >= 1.0 - std::pow(h, band.rho1) && x2 <= 1.0 - std::pow(h, band.rho2);
}

Trace apply_band(const Trace& trace, const BandSpec& band) {
  if (!(band.rho1 >= 0.0) || !(band.rho2 > band.rho1)) throw ConfigError("band needs 0 <= rho1 < rho2");
  Trace out{trace.radius, trace.h, {}};
  for (const auto& [k, a] : trace.coefficients) {
    if (in_band(band, k, trace.h, trace.radius)) out.coefficients[k] = a;
  }
  return out;
}

double trace_norm(const Trace& trace) {
  double sum = 0.0;
  for (const auto& [k, a] : trace.coefficients) sum += std::norm(a);
  return std::sqrt(2.0 * std::numbers::pi * trace.radius * sum);
}

double limit_density(double xi_tangential, double s) {
  const double b = 1.0 - xi_tangential * xi_tangential;
  if (b <= 0.0) return 0.0;
  return std::pow(b, 0.5 - s);
}

std::string cutoff_identifier(CutoffShape shape) {
  if (shape == CutoffShape::Smoothstep) return "smoothstep:6u^5-15u^4+10u^3:support=[1,2]";
  return "exp-glue:exp(-1/u):support=[1,2]";
}

}  // namespace glancelab::weights
