#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glancelab/modes.hpp"
#include "glancelab/weights.hpp"

// Parameter sweeps over eigenmode sequences approaching glancing, weighted
// trace norms of random quasimodes, and log-log exponent fits.

namespace glancelab::experiments {

enum class Domain { Disk, Sphere };

enum class SweepKind {
  Amplitude,         // raw |A_n| (or |A_l|)
  Sharpness,         // || G_1^{rho2,s} 1_band u|_H ||
  NormalDerivative,  // || G_1^{rho2,-s} 1_band h d_nu u|_H ||
  NormalBand,        // hbar^{1/2} || u|_H || for modes with xi_d in [hbar, 4 hbar]
  Quasimode,         // max over trials of || G^{rho,s} u|_H ||, u random in [L, L+w]
};

enum class CoefficientLaw {
  Gaussian,        // complex standard Gaussian on every mode, then normalized
  GlancingBiased,  // same, restricted to the modes closest to glancing on H
};

std::string_view to_string(Domain d);
std::string_view to_string(SweepKind k);
std::string_view to_string(CoefficientLaw c);
Domain domain_from_string(std::string_view name);
SweepKind kind_from_string(std::string_view name);
CoefficientLaw law_from_string(std::string_view name);

/// Log-equispaced integer grid; duplicates after rounding are dropped.
struct GridSpec {
  double min = 1000.0;
  double max = 100000.0;
  int count = 24;
};

std::vector<int> geometric_grid(const GridSpec& grid);

struct SweepConfig {
  SweepKind kind = SweepKind::Amplitude;
  Domain domain = Domain::Disk;
  modes::ScaleTarget target{};
  modes::Selection selection = modes::Selection::MaxTrace;
  double rho1 = 0.3;  // band
  double rho2 = 0.6;  // band; also the G_1 exponent of sharpness sweeps
  double rho = 2.0 / 3.0;  // G exponent of quasimode sweeps
  std::vector<double> s_list{0.0};
  weights::CutoffShape cutoff = weights::CutoffShape::ExpGlue;
  GridSpec grid{};  // n, l, or window start Lambda
  double radius = modes::kDefaultDiskRadius;
  std::uint64_t seed = 1;
  int trials = 20;
  double window_width = 1.0;
  CoefficientLaw law = CoefficientLaw::Gaussian;
  double glancing_fraction = 0.25;
  /// Normal-band scale hbar = h^beta; 0 takes hbar = xi_d of each mode.
  double beta = 0.0;
};

/// One CSV row. Columns that do not apply to a sweep kind are NaN.
struct SweepRow {
  int n = 0;  // n, l, or Lambda
  double lambda = 0.0;
  double h = 0.0;
  double b = 0.0;
  double xi_d = 0.0;
  double amplitude = 0.0;
  double weighted_norm = 0.0;
  double s = 0.0;
  double alpha = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  int m = 0;  // radial index / order / mode count; not written to CSV
};

struct SkippedRow {
  int n = 0;
  std::string reason;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;  // h descending, then s ascending
  std::vector<SkippedRow> skipped;
  std::map<std::string, double> diagnostics;
};

SweepResult amplitude_sweep(const SweepConfig& config);
SweepResult sharpness_sweep(const SweepConfig& config);
SweepResult normal_derivative_sweep(const SweepConfig& config);
SweepResult normal_band_check(const SweepConfig& config);
SweepResult quasimode_boundedness(const SweepConfig& config);
SweepResult run_sweep(const SweepConfig& config);

/// Every Dirichlet eigenmode of the unit disk with lambda in [lo, hi], each
/// listed once per order n >= 0 (the e^{-in theta} partner is implied).
std::vector<modes::DiskMode> enumerate_disk_window(double lo, double hi);

/// Modes in [lo, hi] counted with multiplicity (n > 0 twice).
int disk_window_count(const std::vector<modes::DiskMode>& window);

/// Two-term Weyl count ((L+w)^2 - L^2)/4 - w/2 for the unit disk.
double disk_weyl_count(double lo, double width);

struct FitOptions {
  double drop_low = 0.25;  // fraction of smallest-n rows excluded
  double min_r2 = 0.8;
  double max_rms = 0.05;  // rms log residual tolerated when r2 is low
  std::optional<double> s_filter;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
  double rms_residual = 0.0;
  std::size_t first = 0;  // row indices (inclusive) of the fitted window
  std::size_t last = 0;
  std::size_t count = 0;
};

/// Ordinary least squares of log y on log x. FitError for fewer than 4
/// points, non-positive data, or a fit that is both poorly correlated
/// (r2 < min_r2) and scattered (rms log residual > max_rms). A flat but
/// tight relation has r2 near 0 and is accepted.
FitResult fit_exponent(const std::vector<double>& x, const std::vector<double>& y, double min_r2 = 0.8,
                       double max_rms = 0.05);

double column(const SweepRow& row, std::string_view name);
bool is_column(std::string_view name);
const std::vector<std::string>& column_names();

/// Indices of the rows a fit uses: those matching s_filter, minus the
/// drop_low fraction with the smallest n. Ascending.
std::vector<std::size_t> fit_window(const std::vector<double>& n, const std::vector<double>& s,
                                    const FitOptions& options);

FitResult fit_exponent(const SweepResult& result, std::string_view x, std::string_view y,
                       const FitOptions& options = {});

/// Worker count from GLANCELAB_THREADS (unset or 0: hardware concurrency).
unsigned thread_count();

}  // namespace glancelab::experiments
