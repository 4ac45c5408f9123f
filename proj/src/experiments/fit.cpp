#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "glancelab/error.hpp"
#include "glancelab/experiments.hpp"

namespace glancelab::experiments {

FitResult fit_exponent(const std::vector<double>& x, const std::vector<double>& y, double min_r2, double max_rms) {
  if (x.size() != y.size()) throw FitError("fit: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 4) throw FitError("fit: need at least 4 points, have " + std::to_string(n));
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw FitError("fit: log-log fit needs positive finite data (row " + std::to_string(i) + ")");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw FitError("fit: x values are all equal");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (f.intercept + f.slope * lx[i]);
    sse += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  f.rms_residual = std::sqrt(sse / n);
  f.stderr_slope = std::sqrt(sse / (n - 2) / sxx);
  f.count = n;
  f.first = 0;
  f.last = n - 1;
  if (f.r2 < min_r2 && f.rms_residual > max_rms) {
    throw FitError("fit refused: r2=" + std::to_string(f.r2) + " with rms log residual " +
                   std::to_string(f.rms_residual) + " (pre-asymptotic or noisy data)");
  }
  return f;
}

namespace {

const std::vector<std::string> kColumns = {"n", "lambda", "h", "b", "xi_d", "amplitude",
                                           "weighted_norm", "s", "alpha", "rho1", "rho2"};

}  // namespace

const std::vector<std::string>& column_names() { return kColumns; }

bool is_column(std::string_view name) { return std::find(kColumns.begin(), kColumns.end(), name) != kColumns.end(); }

double column(const SweepRow& row, std::string_view name) {
  if (name == "n") return row.n;
  if (name == "lambda") return row.lambda;
  if (name == "h") return row.h;
  if (name == "b") return row.b;
  if (name == "xi_d") return row.xi_d;
  if (name == "amplitude") return row.amplitude;
  if (name == "weighted_norm") return row.weighted_norm;
  if (name == "s") return row.s;
  if (name == "alpha") return row.alpha;
  if (name == "rho1") return row.rho1;
  if (name == "rho2") return row.rho2;
  throw ConfigError("unknown column '" + std::string(name) + "'");
}

std::vector<std::size_t> fit_window(const std::vector<double>& n, const std::vector<double>& s,
                                    const FitOptions& options) {
  if (!(options.drop_low >= 0.0 && options.drop_low < 1.0)) throw ConfigError("drop-low must be in [0, 1)");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (options.s_filter) {
      if (i >= s.size() || !(std::fabs(s[i] - *options.s_filter) <= 1e-12)) continue;
    }
    idx.push_back(i);
  }
  std::vector<std::size_t> by_n = idx;
  std::stable_sort(by_n.begin(), by_n.end(), [&](std::size_t a, std::size_t b) { return n[a] < n[b]; });
  const auto drop = static_cast<std::size_t>(std::floor(options.drop_low * by_n.size()));
  std::vector<std::size_t> kept(by_n.begin() + static_cast<std::ptrdiff_t>(drop), by_n.end());
  std::sort(kept.begin(), kept.end());
  return kept;
}

FitResult fit_exponent(const SweepResult& result, std::string_view x, std::string_view y, const FitOptions& options) {
  std::vector<double> n, s;
  for (const SweepRow& r : result.rows) {
    n.push_back(r.n);
    s.push_back(r.s);
  }
  const auto idx = fit_window(n, s, options);
  std::vector<double> xs, ys;
  for (std::size_t i : idx) {
    xs.push_back(column(result.rows[i], x));
    ys.push_back(column(result.rows[i], y));
  }
  FitResult f = fit_exponent(xs, ys, options.min_r2, options.max_rms);
  if (!idx.empty()) {
    f.first = idx.front();
    f.last = idx.back();
  }
  return f;
}

}  // namespace glancelab::experiments
