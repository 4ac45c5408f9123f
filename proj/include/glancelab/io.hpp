#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "glancelab/experiments.hpp"
#include "glancelab/oracle.hpp"

// CSV tables, run manifests, and SVG plots.

namespace glancelab::io {

inline constexpr const char* kToolName = "glancelab";
std::string_view tool_version();

/// Numeric table; NaN cells are written as "nan".
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column position; ConfigError if absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

CsvTable to_table(const experiments::SweepResult& result);

/// 17 significant digits, '.' decimal point regardless of locale, LF line ends.
std::string format_number(double v);
std::string format_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

void write_text(const std::string& path, std::string_view text);
std::string read_text(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

nlohmann::json config_to_json(const experiments::SweepConfig& config);
/// Unknown keys are rejected with ConfigError.
experiments::SweepConfig config_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const experiments::FitResult& fit);
nlohmann::json report_to_json(const oracle::OracleReport& report);

/// Everything needed to regenerate `csv_text`: tool version, resolved
/// config, seed, cutoff description, hashes. `timestamp` is informational.
nlohmann::json build_manifest(const experiments::SweepResult& result, std::string_view command,
                              std::string_view csv_text, std::string_view csv_name, std::string_view timestamp);

/// Reads the resolved config back out of a manifest file.
experiments::SweepConfig config_from_manifest(const std::string& path);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Fits y against x over the rows selected by fit_window (n and s columns
/// are used when present).
experiments::FitResult fit_table(const CsvTable& table, std::string_view x, std::string_view y,
                                 const experiments::FitOptions& options);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::optional<experiments::FitResult> fit;  // drawn as a line with its slope
};

/// Standalone log-log SVG; byte-identical for identical input.
std::string render_svg(const std::vector<PlotSeries>& series, std::string_view x_label, std::string_view y_label);

/// Splits the table by `series_column` (if non-empty), fits each series,
/// and writes an SVG. ConfigError for missing columns, an empty table, or
/// non-positive values; nothing is written then.
void emit_plot(const CsvTable& table, std::string_view x, std::string_view y, std::string_view series_column,
               const experiments::FitOptions& options, const std::string& out_path);

}  // namespace glancelab::io
