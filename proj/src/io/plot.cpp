#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "glancelab/error.hpp"
#include "glancelab/io.hpp"

namespace glancelab::io {

namespace ex = glancelab::experiments;

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 200.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void pad() {
    if (hi - lo < 1e-3) {
      lo -= 0.05;
      hi += 0.05;
    }
    const double p = 0.05 * (hi - lo);
    lo -= p;
    hi += p;
  }
};

// Tick positions in log10 units: decades, or 1-2-5 mantissas on narrow axes.
std::vector<double> ticks(const Range& r) {
  std::vector<double> out;
  for (double d = std::ceil(r.lo); d <= r.hi; d += 1.0) out.push_back(d);
  if (out.size() >= 2) return out;
  out.clear();
  const double mantissas[] = {1.0, 2.0, 5.0};
  for (double d = std::floor(r.lo); d <= std::ceil(r.hi); d += 1.0) {
    for (double m : mantissas) {
      const double t = d + std::log10(m);
      if (t >= r.lo && t <= r.hi) out.push_back(t);
    }
  }
  if (out.size() >= 2) return out;
  out = {r.lo, 0.5 * (r.lo + r.hi), r.hi};
  return out;
}

std::string tick_label(double t) { return fmt("%.3g", std::pow(10.0, t)); }

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, std::string_view x_label, std::string_view y_label) {
  Range rx, ry;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw ConfigError("plot series '" + s.label + "' has mismatched x and y");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) throw ConfigError("log-log plot needs positive data");
      rx.add(std::log10(s.x[i]));
      ry.add(std::log10(s.y[i]));
    }
  }
  if (!std::isfinite(rx.lo)) throw ConfigError("nothing to plot");
  rx.pad();
  ry.pad();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double lx) { return kLeft + pw * (lx - rx.lo) / (rx.hi - rx.lo); };
  auto sy = [&](double ly) { return kTop + ph * (1.0 - (ly - ry.lo) / (ry.hi - ry.lo)); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
         "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(pw) + "\" height=\"" + px(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ticks(rx)) {
    const double x = sx(t);
    svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(x) + "\" y2=\"" + px(kTop + ph) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + px(x) + "\" y=\"" + px(kTop + ph + 16) + "\" text-anchor=\"middle\">" + tick_label(t) +
           "</text>\n";
  }
  for (double t : ticks(ry)) {
    const double y = sy(t);
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kLeft + pw) + "\" y2=\"" + px(y) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(y + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
           "</text>\n";
  }
  svg += "<text x=\"" + px(kLeft + pw / 2) + "\" y=\"" + px(kHeight - 15) + "\" text-anchor=\"middle\">" +
         escape(x_label) + "</text>\n";
  svg += "<text transform=\"translate(18," + px(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(y_label) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = kPalette[k % std::size(kPalette)];
    svg += "<g fill=\"" + color + "\">\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      svg += "<circle cx=\"" + px(sx(std::log10(s.x[i]))) + "\" cy=\"" + px(sy(std::log10(s.y[i]))) +
             "\" r=\"3\"/>\n";
    }
    svg += "</g>\n";

    std::string legend = s.label;
    if (s.fit) {
      const double x0 = *std::min_element(s.x.begin(), s.x.end());
      const double x1 = *std::max_element(s.x.begin(), s.x.end());
      auto line_y = [&](double x) { return (s.fit->intercept + s.fit->slope * std::log(x)) / std::log(10.0); };
      svg += "<line x1=\"" + px(sx(std::log10(x0))) + "\" y1=\"" + px(sy(line_y(x0))) + "\" x2=\"" +
             px(sx(std::log10(x1))) + "\" y2=\"" + px(sy(line_y(x1))) + "\" stroke=\"" + color +
             "\" stroke-width=\"1.5\"/>\n";
      legend += " slope " + fmt("%.4f", s.fit->slope);
    } else {
      legend += " (no fit)";
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    const double lx = kLeft + pw + 12;
    svg += "<circle cx=\"" + px(lx) + "\" cy=\"" + px(ly) + "\" r=\"4\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + px(lx + 10) + "\" y=\"" + px(ly + 4) + "\">" + escape(legend) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const CsvTable& table, std::string_view x, std::string_view y, std::string_view series_column,
               const ex::FitOptions& options, const std::string& out_path) {
  if (table.rows.empty()) throw ConfigError("table has no rows to plot");
  const std::size_t xi = table.column(x);
  const std::size_t yi = table.column(y);
  const bool split = !series_column.empty();
  const std::size_t si = split ? table.column(series_column) : 0;

  std::map<double, CsvTable> groups;
  for (const auto& row : table.rows) {
    const double key = split ? row[si] : 0.0;
    auto& g = groups[key];
    if (g.header.empty()) g.header = table.header;
    g.rows.push_back(row);
  }

  std::vector<PlotSeries> series;
  for (const auto& [key, sub] : groups) {
    PlotSeries p;
    p.label = split ? std::string(series_column) + "=" + format_number(key) : std::string(y);
    for (const auto& row : sub.rows) {
      p.x.push_back(row[xi]);
      p.y.push_back(row[yi]);
    }
    ex::FitOptions o = options;
    if (split && series_column == "s") o.s_filter = key;
    try {
      p.fit = fit_table(sub, x, y, o);
    } catch (const FitError&) {
      p.fit.reset();
    }
    series.push_back(std::move(p));
  }
  write_text(out_path, render_svg(series, x, y));
}

}  // namespace glancelab::io
