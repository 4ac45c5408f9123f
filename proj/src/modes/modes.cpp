#include "glancelab/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "glancelab/error.hpp"
#include "glancelab/specfun.hpp"

namespace glancelab::modes {

namespace sf = glancelab::specfun;

std::string_view to_string(Selection s) {
  switch (s) {
    case Selection::SmallestLambda: return "smallest-lambda";
    case Selection::MaxTrace: return "max-trace";
    case Selection::MaxNormalDerivative: return "max-normal-derivative";
  }
  return "unknown";
}

Selection selection_from_string(std::string_view name) {
  for (Selection s : {Selection::SmallestLambda, Selection::MaxTrace, Selection::MaxNormalDerivative}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown mode selection '" + std::string(name) + "'");
}

Window disk_window(int n, const ScaleTarget& target, double radius) {
  const double width = std::pow(static_cast<double>(n), 1.0 - target.alpha);
  const double base = n / radius;
  return {base + target.offset_const * width, base + (target.offset_const + 1.0) * width};
}

Window sphere_window(int l, const ScaleTarget& target) {
  const double width = std::pow(static_cast<double>(l), 1.0 - target.alpha);
  return {l - (target.offset_const + 1.0) * width, l - target.offset_const * width};
}

DiskMode disk_mode(int n, int m) {
  if (n < 0 || m < 1) throw DomainError("disk_mode: need n >= 0, m >= 1");
  const double lambda = sf::bessel_zero(n, m).value;
  const double edge = std::fabs(sf::bessel_j(n + 1, lambda));
  return {n, m, lambda, 1.0 / lambda, 1.0 / (std::sqrt(std::numbers::pi) * edge)};
}

std::vector<DiskMode> disk_modes_in_window(int n, double lo, double hi) {
  if (n < 0) throw DomainError("disk_modes_in_window: need n >= 0");
  std::vector<DiskMode> out;
  if (!(hi >= lo) || hi <= n) return out;
  const int m_lo = std::max(1, static_cast<int>(std::floor(sf::bessel_zero_index_estimate(n, lo))) - 1);
  const int m_hi = static_cast<int>(std::ceil(sf::bessel_zero_index_estimate(n, hi))) + 1;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double lambda = sf::bessel_zero(n, m).value;
    if (lambda > hi) break;
    if (lambda >= lo) out.push_back(disk_mode(n, m));
  }
  return out;
}

DiskMode select_disk_mode_at_scale(int n, const ScaleTarget& target, double radius, Selection policy) {
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("select_disk_mode_at_scale: radius must be in (0, 1)");
  const Window w = disk_window(n, target, radius);
  const std::vector<DiskMode> found = disk_modes_in_window(n, w.lo, w.hi);
  if (found.empty()) {
    throw NoModeError("no Dirichlet eigenvalue of order n=" + std::to_string(n) + " in [" + std::to_string(w.lo) +
                      ", " + std::to_string(w.hi) + "]");
  }
  if (policy == Selection::SmallestLambda) return found.front();
  auto score = [&](const DiskMode& d) {
    const double x = d.lambda * radius;
    const double v = policy == Selection::MaxTrace ? sf::bessel_j(n, x) : sf::bessel_j_prime(n, x);
    return std::fabs(d.norm_const * v);
  };
  // Strict comparison keeps the smallest lambda on exact ties.
  const DiskMode* best = &found.front();
  double best_score = score(*best);
  for (const DiskMode& d : found) {
    const double sc = score(d);
    if (sc > best_score) {
      best = &d;
      best_score = sc;
    }
  }
  return *best;
}

SphereMode sphere_mode_at_scale(int l, const ScaleTarget& target) {
  if (l < 0) throw DomainError("sphere_mode_at_scale: need l >= 0");
  const Window w = sphere_window(l, target);
  int m = static_cast<int>(std::floor(w.hi));
  if ((l + m) % 2 != 0) --m;
  if (m < w.lo || m < -l || m > l) {
    throw NoModeError("no even-parity order for l=" + std::to_string(l) + " in [" + std::to_string(w.lo) + ", " +
                      std::to_string(w.hi) + "]");
  }
  const double lambda = std::sqrt(static_cast<double>(l) * (l + 1.0));
  return {l, m, lambda, lambda > 0.0 ? 1.0 / lambda : 0.0, true};
}

std::optional<int> disk_n_min(const ScaleTarget& target, double radius) {
  if (target.alpha >= 1.0 || target.alpha < 0.0) return std::nullopt;
  // The window's lower edge approaches z = 1/R from above, where the
  // spacing is largest; beating it there beats it for every larger n.
  const double z = 1.0 / radius;
  const double spacing = std::numbers::pi * z / std::sqrt(z * z - 1.0);
  return std::max(1, static_cast<int>(std::ceil(std::pow(spacing, 1.0 / (1.0 - target.alpha)))));
}

std::optional<int> sphere_l_min(const ScaleTarget& target) {
  if (!(target.alpha > 0.0 && target.alpha < 1.0)) return std::nullopt;
  const double wide = std::pow(2.0, 1.0 / (1.0 - target.alpha));
  const double inside = std::pow(target.offset_const + 1.0, 1.0 / target.alpha);
  return static_cast<int>(std::ceil(std::max(wide, inside)));
}

Trace restrict_disk(const DiskMode& mode, double radius) {
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("restrict_disk: radius must be in (0, 1)");
  Trace t{radius, mode.h, {}};
  t.coefficients[mode.n] = mode.norm_const * sf::bessel_j(mode.n, mode.lambda * radius);
  return t;
}

Trace restrict_disk_normal_derivative(const DiskMode& mode, double radius) {
  if (!(radius > 0.0 && radius < 1.0)) {
    throw DomainError("restrict_disk_normal_derivative: radius must be in (0, 1)");
  }
  Trace t{radius, mode.h, {}};
  t.coefficients[mode.n] = mode.norm_const * sf::bessel_j_prime(mode.n, mode.lambda * radius);
  return t;
}

Trace restrict_sphere(const SphereMode& mode) {
  Trace t{1.0, mode.h, {}};
  t.coefficients[mode.m] = sf::legendre_equator(mode.l, mode.m).value;
  return t;
}

PhaseSpacePoint phase_space_point(int k, double h, double radius) {
  if (!(h > 0.0) || !(radius > 0.0)) throw DomainError("phase_space_point: need h > 0 and R > 0");
  const double xi = h * std::abs(k) / radius;
  const double b = 1.0 - xi * xi;
  return {xi, b, std::sqrt(std::max(b, 0.0))};
}

double disk_glancing_b(const DiskMode& mode, double radius) {
  return phase_space_point(mode.n, mode.h, radius).b;
}

}  // namespace glancelab::modes
