#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "experiments/parallel.hpp"
#include "glancelab/error.hpp"
#include "glancelab/experiments.hpp"
#include "glancelab/specfun.hpp"

namespace glancelab::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Below this the Weyl cross-check is too coarse to flag missing zeros.
constexpr double kWeylCheckFrom = 200.0;
constexpr double kWeylTolerance = 0.2;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-row stream: independent of how rows are scheduled.
std::mt19937_64 row_engine(std::uint64_t seed, std::size_t row) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(0xD1B54A32D192ED03ULL + row)));
}

// Box-Muller on 53-bit uniforms. std::normal_distribution is not specified
// bit-for-bit across standard libraries.
class Gaussian {
 public:
  explicit Gaussian(std::mt19937_64& engine) : engine_(engine) {}
  std::complex<double> complex_standard() {
    const double r = std::sqrt(-std::log(uniform_open()));
    const double t = 2.0 * std::numbers::pi * uniform_open();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  std::mt19937_64& engine_;
};

struct RowOutcome {
  std::vector<SweepRow> rows;
  std::optional<SkippedRow> skipped;
};

SweepRow base_row(int n, double lambda, double h, const SweepConfig& c) {
  SweepRow r;
  r.n = n;
  r.lambda = lambda;
  r.h = h;
  r.b = kNaN;
  r.xi_d = kNaN;
  r.amplitude = kNaN;
  r.weighted_norm = kNaN;
  r.s = kNaN;
  r.alpha = c.target.alpha;
  r.rho1 = kNaN;
  r.rho2 = kNaN;
  return r;
}

// A single-mode trace together with the mode's location.
struct ModeTrace {
  int n;
  int m;
  double lambda;
  double h;
  Trace trace;
  Trace derivative;  // disk only
};

ModeTrace select_mode(int n, const SweepConfig& c, modes::Selection policy) {
  if (c.domain == Domain::Disk) {
    const modes::DiskMode d = modes::select_disk_mode_at_scale(n, c.target, c.radius, policy);
    return {d.n, d.m, d.lambda, d.h, modes::restrict_disk(d, c.radius),
            modes::restrict_disk_normal_derivative(d, c.radius)};
  }
  const modes::SphereMode s = modes::sphere_mode_at_scale(n, c.target);
  return {s.l, s.m, s.lambda, s.h, modes::restrict_sphere(s), Trace{}};
}

int trace_index(const ModeTrace& mt) { return mt.trace.coefficients.begin()->first; }

template <class RowFn>
SweepResult run_rows(const SweepConfig& config, const std::vector<int>& grid, RowFn&& row_fn) {
  std::vector<RowOutcome> outcomes(grid.size());
  detail::parallel_for(grid.size(), thread_count(), [&](std::size_t i) {
    try {
      outcomes[i] = row_fn(i, grid[i]);
    } catch (const NoModeError& e) {
      outcomes[i].skipped = SkippedRow{grid[i], e.what()};
    }
  });
  SweepResult result;
  result.config = config;
  for (auto& o : outcomes) {
    for (auto& r : o.rows) result.rows.push_back(r);
    if (o.skipped) result.skipped.push_back(*o.skipped);
  }
  std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.h != b.h) return a.h > b.h;
    return a.s < b.s;
  });
  result.diagnostics["rows"] = static_cast<double>(result.rows.size());
  result.diagnostics["skipped"] = static_cast<double>(result.skipped.size());
  return result;
}

void record_index_ratio(SweepResult& result) {
  if (result.config.kind == SweepKind::Quasimode || result.rows.empty()) return;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const SweepRow& r : result.rows) {
    const double ratio = static_cast<double>(r.m) / r.n;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const char* key = result.config.domain == Domain::Disk ? "m_over_n" : "m_over_l";
  result.diagnostics[std::string(key) + "_min"] = lo;
  result.diagnostics[std::string(key) + "_max"] = hi;
  if (result.config.domain == Domain::Disk) {
    if (auto nm = modes::disk_n_min(result.config.target, result.config.radius)) result.diagnostics["n_min"] = *nm;
  } else if (auto lm = modes::sphere_l_min(result.config.target)) {
    result.diagnostics["l_min"] = *lm;
  }
}

double hyper_radius(const SweepConfig& c) { return c.domain == Domain::Disk ? c.radius : 1.0; }

void check_band(const SweepConfig& c) {
  if (!(c.rho1 >= 0.0) || !(c.rho2 > c.rho1)) throw ConfigError("band needs 0 <= rho1 < rho2");
  if (!(c.target.alpha > c.rho1 && c.target.alpha < c.rho2)) {
    throw ConfigError("band sweeps need rho1 < alpha < rho2");
  }
  if (c.s_list.empty()) throw ConfigError("band sweeps need at least one s value");
}

// G_1^{rho2, sign*s} applied after the band, for every s; asserts that the
// weighted norm does not increase with s (sigma <= 1 for a single mode).
std::vector<SweepRow> band_rows(const SweepConfig& c, const ModeTrace& mt, const Trace& source, double sign,
                                double amplitude) {
  const double radius = hyper_radius(c);
  const int k = trace_index(mt);
  const modes::PhaseSpacePoint p = modes::phase_space_point(k, mt.h, radius);
  const weights::BandSpec band{c.rho1, c.rho2};
  if (!weights::in_band(band, k, mt.h, radius)) {
    throw NoModeError("selected mode outside band: b=" + std::to_string(p.b) + " not in [h^rho2, h^rho1] = [" +
                      std::to_string(std::pow(mt.h, c.rho2)) + ", " + std::to_string(std::pow(mt.h, c.rho1)) +
                      "]");
  }
  const Trace banded = weights::apply_band(source, band);
  std::vector<SweepRow> rows;
  for (double s : c.s_list) {
    SweepRow r = base_row(mt.n, mt.lambda, mt.h, c);
    r.m = mt.m;
    r.b = p.b;
    r.xi_d = p.xi_d;
    r.amplitude = amplitude;
    r.s = s;
    r.rho1 = c.rho1;
    r.rho2 = c.rho2;
    r.weighted_norm =
        weights::trace_norm(weights::apply_weight(banded, {c.rho2, sign * s, c.cutoff}, weights::WeightPart::G1));
    rows.push_back(r);
  }
  std::vector<SweepRow> by_s = rows;
  std::sort(by_s.begin(), by_s.end(), [](const SweepRow& a, const SweepRow& b) { return a.s < b.s; });
  for (std::size_t i = 1; i < by_s.size(); ++i) {
    const double prev = by_s[i - 1].weighted_norm;
    const double cur = by_s[i].weighted_norm;
    const bool ok = sign > 0 ? cur <= prev * (1.0 + 1e-14) : cur >= prev * (1.0 - 1e-14);
    if (!ok) throw NumericalError("weighted norm not monotone in s at n=" + std::to_string(mt.n));
  }
  return rows;
}

}  // namespace

std::string_view to_string(Domain d) { return d == Domain::Disk ? "disk" : "sphere"; }

std::string_view to_string(SweepKind k) {
  switch (k) {
    case SweepKind::Amplitude: return "amplitude";
    case SweepKind::Sharpness: return "sharpness";
    case SweepKind::NormalDerivative: return "normal-derivative";
    case SweepKind::NormalBand: return "normal-band";
    case SweepKind::Quasimode: return "quasimode";
  }
  return "unknown";
}

std::string_view to_string(CoefficientLaw c) { return c == CoefficientLaw::Gaussian ? "gaussian" : "glancing-biased"; }

Domain domain_from_string(std::string_view name) {
  if (name == "disk") return Domain::Disk;
  if (name == "sphere") return Domain::Sphere;
  throw ConfigError("unknown domain '" + std::string(name) + "'");
}

SweepKind kind_from_string(std::string_view name) {
  for (SweepKind k : {SweepKind::Amplitude, SweepKind::Sharpness, SweepKind::NormalDerivative, SweepKind::NormalBand,
                      SweepKind::Quasimode}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown sweep kind '" + std::string(name) + "'");
}

CoefficientLaw law_from_string(std::string_view name) {
  if (name == "gaussian") return CoefficientLaw::Gaussian;
  if (name == "glancing-biased") return CoefficientLaw::GlancingBiased;
  throw ConfigError("unknown coefficient law '" + std::string(name) + "'");
}

std::vector<int> geometric_grid(const GridSpec& grid) {
  if (!(grid.min >= 1.0) || !(grid.max >= grid.min) || grid.count < 1) {
    throw ConfigError("grid needs 1 <= min <= max and count >= 1");
  }
  std::vector<int> out;
  const double ratio = grid.count > 1 ? std::log(grid.max / grid.min) / (grid.count - 1) : 0.0;
  for (int i = 0; i < grid.count; ++i) {
    const int v = static_cast<int>(std::lround(grid.min * std::exp(ratio * i)));
    if (out.empty() || v != out.back()) out.push_back(v);
  }
  return out;
}

unsigned thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("GLANCELAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw ConfigError("GLANCELAB_THREADS must be a non-negative integer");
    n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

SweepResult amplitude_sweep(const SweepConfig& config) {
  const auto grid = geometric_grid(config.grid);
  SweepResult result = run_rows(config, grid, [&](std::size_t, int n) {
    const ModeTrace mt = select_mode(n, config, config.selection);
    const modes::PhaseSpacePoint p = modes::phase_space_point(trace_index(mt), mt.h, hyper_radius(config));
    SweepRow r = base_row(mt.n, mt.lambda, mt.h, config);
    r.m = mt.m;
    r.b = p.b;
    r.xi_d = p.xi_d;
    r.amplitude = std::abs(mt.trace.coefficients.begin()->second);
    r.weighted_norm = weights::trace_norm(mt.trace);
    return RowOutcome{{r}, std::nullopt};
  });
  record_index_ratio(result);
  return result;
}

SweepResult sharpness_sweep(const SweepConfig& config) {
  check_band(config);
  const auto grid = geometric_grid(config.grid);
  SweepResult result = run_rows(config, grid, [&](std::size_t, int n) {
    const ModeTrace mt = select_mode(n, config, config.selection);
    const double amp = std::abs(mt.trace.coefficients.begin()->second);
    return RowOutcome{band_rows(config, mt, mt.trace, +1.0, amp), std::nullopt};
  });
  record_index_ratio(result);
  return result;
}

SweepResult normal_derivative_sweep(const SweepConfig& config) {
  if (config.domain != Domain::Disk) throw ConfigError("normal-derivative sweeps are disk only");
  check_band(config);
  const auto grid = geometric_grid(config.grid);
  SweepResult result = run_rows(config, grid, [&](std::size_t, int n) {
    const ModeTrace mt = select_mode(n, config, config.selection);
    const double amp = std::abs(mt.derivative.coefficients.begin()->second);
    return RowOutcome{band_rows(config, mt, mt.derivative, -1.0, amp), std::nullopt};
  });
  record_index_ratio(result);
  return result;
}

SweepResult normal_band_check(const SweepConfig& config) {
  if (config.beta < 0.0 || config.beta > 0.5) throw ConfigError("normal-band beta must be in [0, 1/2]");
  const auto grid = geometric_grid(config.grid);
  SweepResult result = run_rows(config, grid, [&](std::size_t, int n) {
    const ModeTrace mt = select_mode(n, config, config.selection);
    const modes::PhaseSpacePoint p = modes::phase_space_point(trace_index(mt), mt.h, hyper_radius(config));
    const double hbar = config.beta > 0.0 ? std::pow(mt.h, config.beta) : p.xi_d;
    if (!(p.xi_d >= hbar && p.xi_d <= 4.0 * hbar)) {
      throw NoModeError("xi_d=" + std::to_string(p.xi_d) + " outside [hbar, 4 hbar], hbar=" + std::to_string(hbar));
    }
    if (hbar < std::sqrt(mt.h)) {
      throw NoModeError("hbar=" + std::to_string(hbar) + " below h^{1/2}=" + std::to_string(std::sqrt(mt.h)));
    }
    SweepRow r = base_row(mt.n, mt.lambda, mt.h, config);
    r.m = mt.m;
    r.b = p.b;
    r.xi_d = p.xi_d;
    r.amplitude = std::abs(mt.trace.coefficients.begin()->second);
    r.weighted_norm = std::sqrt(hbar) * weights::trace_norm(mt.trace);
    return RowOutcome{{r}, std::nullopt};
  });
  record_index_ratio(result);
  return result;
}

std::vector<modes::DiskMode> enumerate_disk_window(double lo, double hi) {
  std::vector<modes::DiskMode> out;
  // j_{n,1} > n, so orders at or above hi contribute nothing.
  for (int n = 0; n < hi; ++n) {
    for (auto& d : modes::disk_modes_in_window(n, lo, hi)) out.push_back(d);
  }
  return out;
}

int disk_window_count(const std::vector<modes::DiskMode>& window) {
  int count = 0;
  for (const auto& d : window) count += d.n == 0 ? 1 : 2;
  return count;
}

double disk_weyl_count(double lo, double width) {
  const double hi = lo + width;
  return (hi * hi - lo * lo) / 4.0 - width / 2.0;
}

SweepResult quasimode_boundedness(const SweepConfig& config) {
  if (config.domain != Domain::Disk) throw ConfigError("quasimode sweeps are disk only");
  if (config.trials < 1) throw ConfigError("quasimode sweeps need trials >= 1");
  if (!(config.window_width > 0.0)) throw ConfigError("quasimode window width must be positive");
  if (config.s_list.empty()) throw ConfigError("quasimode sweeps need at least one s value");
  if (!(config.glancing_fraction > 0.0 && config.glancing_fraction <= 1.0)) {
    throw ConfigError("glancing fraction must be in (0, 1]");
  }
  const auto grid = geometric_grid(config.grid);
  std::vector<double> weyl_ratio(grid.size(), kNaN);
  SweepResult result = run_rows(config, grid, [&](std::size_t row, int start) {
    const double lo = start;
    const double hi = lo + config.window_width;
    const auto window = enumerate_disk_window(lo, hi);
    const int count = disk_window_count(window);
    const double weyl = disk_weyl_count(lo, config.window_width);
    weyl_ratio[row] = count / weyl;
    if (lo >= kWeylCheckFrom && std::fabs(count - weyl) > kWeylTolerance * weyl) {
      throw NumericalError("window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] holds " +
                           std::to_string(count) + " modes, Weyl predicts " + std::to_string(weyl));
    }
    if (count == 0) throw NoModeError("empty spectral window at " + std::to_string(lo));

    // Basis elements: one per (mode, sign of k).
    const double h = 1.0 / lo;
    struct Element {
      int k;
      double value;  // c_n J_n(lambda R)
      double b;
    };
    std::vector<Element> basis;
    for (const auto& d : window) {
      const double a = d.norm_const * specfun::bessel_j(d.n, d.lambda * config.radius);
      const double b = modes::disk_glancing_b(d, config.radius);
      basis.push_back({d.n, a, b});
      if (d.n > 0) basis.push_back({-d.n, a, b});  // c_n J_n(lambda r) e^{-i n theta}
    }
    std::vector<char> active(basis.size(), 1);
    if (config.law == CoefficientLaw::GlancingBiased) {
      std::vector<std::size_t> order(basis.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return std::fabs(basis[a].b) < std::fabs(basis[b].b); });
      const auto keep = static_cast<std::size_t>(std::ceil(config.glancing_fraction * basis.size()));
      std::fill(active.begin(), active.end(), 0);
      for (std::size_t i = 0; i < keep; ++i) active[order[i]] = 1;
    }

    std::mt19937_64 engine = row_engine(config.seed, row);
    Gaussian gauss(engine);
    std::vector<double> best(config.s_list.size(), 0.0);
    double best_raw = 0.0;
    std::vector<std::complex<double>> coef(basis.size());
    for (int t = 0; t < config.trials; ++t) {
      double total = 0.0;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::complex<double> g = gauss.complex_standard();
        coef[i] = active[i] ? g : std::complex<double>{};
        total += std::norm(coef[i]);
      }
      const double scale = 1.0 / std::sqrt(total);
      Trace trace{config.radius, h, {}};
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (active[i]) trace.coefficients[basis[i].k] += scale * coef[i] * basis[i].value;
      }
      best_raw = std::max(best_raw, weights::trace_norm(trace));
      for (std::size_t j = 0; j < config.s_list.size(); ++j) {
        const weights::WeightSpec spec{config.rho, config.s_list[j], config.cutoff};
        best[j] = std::max(best[j], weights::trace_norm(weights::apply_weight(trace, spec, weights::WeightPart::G)));
      }
    }
    RowOutcome out;
    for (std::size_t j = 0; j < config.s_list.size(); ++j) {
      SweepRow r = base_row(start, lo, h, config);
      r.alpha = kNaN;
      r.m = count;
      r.amplitude = best_raw;
      r.weighted_norm = best[j];
      r.s = config.s_list[j];
      out.rows.push_back(r);
    }
    return out;
  });
  double lo_ratio = std::numeric_limits<double>::infinity();
  double hi_ratio = -lo_ratio;
  for (double r : weyl_ratio) {
    if (std::isnan(r)) continue;
    lo_ratio = std::min(lo_ratio, r);
    hi_ratio = std::max(hi_ratio, r);
  }
  if (std::isfinite(lo_ratio)) {
    result.diagnostics["weyl_ratio_min"] = lo_ratio;
    result.diagnostics["weyl_ratio_max"] = hi_ratio;
  }
  return result;
}

SweepResult run_sweep(const SweepConfig& config) {
  switch (config.kind) {
    case SweepKind::Amplitude: return amplitude_sweep(config);
    case SweepKind::Sharpness: return sharpness_sweep(config);
    case SweepKind::NormalDerivative: return normal_derivative_sweep(config);
    case SweepKind::NormalBand: return normal_band_check(config);
    case SweepKind::Quasimode: return quasimode_boundedness(config);
  }
  throw ConfigError("unknown sweep kind");
}

}  // namespace glancelab::experiments
