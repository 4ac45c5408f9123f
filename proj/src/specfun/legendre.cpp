#include <cmath>
#include <cstdlib>
#include <numbers>

#include "glancelab/error.hpp"
#include "glancelab/specfun.hpp"

namespace glancelab::specfun {

namespace {

// log of Gamma((k+1)/2) / (sqrt(pi) Gamma(k/2 + 1)), which is the
// normalised equator value of the Legendre functions for even l+m.
double log_half_ratio(int k) {
  return std::lgamma(0.5 * (k + 1)) - std::lgamma(0.5 * k + 1.0) - 0.5 * std::log(std::numbers::pi);
}

}  // namespace

EquatorAmplitude legendre_equator(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw DomainError("legendre_equator: need 0 <= |m| <= l");
  const int am = std::abs(m);
  if ((l + am) % 2 != 0) return {l, m, 0.0};
  const double log_mag =
      0.5 * (std::log((2.0 * l + 1.0) / (4.0 * std::numbers::pi)) + log_half_ratio(l - am) + log_half_ratio(l + am));
  double value = std::exp(log_mag);
  if (((l + am) / 2) % 2 != 0) value = -value;
  // Condon-Shortley phase for negative orders: Y_l^{-m} = (-1)^m conj(Y_l^m).
  if (m < 0 && am % 2 != 0) value = -value;
  return {l, m, value};
}

}  // namespace glancelab::specfun
