#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "glancelab/error.hpp"
#include "glancelab/io.hpp"

#ifndef GLANCELAB_VERSION
#define GLANCELAB_VERSION "0.0.0"
#endif

namespace glancelab::io {

namespace ex = glancelab::experiments;
using nlohmann::json;

std::string_view tool_version() { return GLANCELAB_VERSION; }

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("no column '" + std::string(name) + "' in table");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable to_table(const ex::SweepResult& result) {
  CsvTable t;
  t.header = ex::column_names();
  for (const auto& row : result.rows) {
    std::vector<double> cells;
    for (const auto& name : t.header) cells.push_back(ex::column(row, name));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw ConfigError("CSV row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_number(std::string_view cell, std::size_t line_no) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw ConfigError("CSV line " + std::to_string(line_no) + ": not a number: '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (t.header.empty()) {
      for (auto c : cells) t.header.emplace_back(c);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                        " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (auto c : cells) row.push_back(parse_number(c, line_no));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw ConfigError("CSV input is empty");
  return t;
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_csv(const std::string& path, const CsvTable& table) { write_text(path, format_csv(table)); }

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json config_to_json(const ex::SweepConfig& c) {
  return json{
      {"kind", ex::to_string(c.kind)},
      {"domain", ex::to_string(c.domain)},
      {"alpha", c.target.alpha},
      {"offset_const", c.target.offset_const},
      {"selection", modes::to_string(c.selection)},
      {"rho1", c.rho1},
      {"rho2", c.rho2},
      {"rho", c.rho},
      {"s", c.s_list},
      {"cutoff", weights::to_string(c.cutoff)},
      {"grid", {{"min", c.grid.min}, {"max", c.grid.max}, {"count", c.grid.count}}},
      {"radius", c.radius},
      {"seed", c.seed},
      {"trials", c.trials},
      {"window_width", c.window_width},
      {"law", ex::to_string(c.law)},
      {"glancing_fraction", c.glancing_fraction},
      {"beta", c.beta},
  };
}

ex::SweepConfig config_from_json(const json& j) {
  static const std::vector<std::string> known = {"kind",   "domain", "alpha",  "offset_const", "selection",
                                                 "rho1",   "rho2",   "rho",    "s",            "cutoff",
                                                 "grid",   "radius", "seed",   "trials",       "window_width",
                                                 "law",    "glancing_fraction", "beta"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");
  }
  ex::SweepConfig c;
  try {
    if (j.contains("kind")) c.kind = ex::kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("domain")) c.domain = ex::domain_from_string(j.at("domain").get<std::string>());
    if (j.contains("alpha")) c.target.alpha = j.at("alpha").get<double>();
    if (j.contains("offset_const")) c.target.offset_const = j.at("offset_const").get<double>();
    if (j.contains("selection")) c.selection = modes::selection_from_string(j.at("selection").get<std::string>());
    if (j.contains("rho1")) c.rho1 = j.at("rho1").get<double>();
    if (j.contains("rho2")) c.rho2 = j.at("rho2").get<double>();
    if (j.contains("rho")) c.rho = j.at("rho").get<double>();
    if (j.contains("s")) c.s_list = j.at("s").get<std::vector<double>>();
    if (j.contains("cutoff")) c.cutoff = weights::cutoff_from_string(j.at("cutoff").get<std::string>());
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid.min = g.at("min").get<double>();
      c.grid.max = g.at("max").get<double>();
      c.grid.count = g.at("count").get<int>();
    }
    if (j.contains("radius")) c.radius = j.at("radius").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("window_width")) c.window_width = j.at("window_width").get<double>();
    if (j.contains("law")) c.law = ex::law_from_string(j.at("law").get<std::string>());
    if (j.contains("glancing_fraction")) c.glancing_fraction = j.at("glancing_fraction").get<double>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

json fit_to_json(const ex::FitResult& f) {
  return json{{"slope", f.slope},
              {"intercept", f.intercept},
              {"stderr", f.stderr_slope},
              {"r2", f.r2},
              {"rms_residual", f.rms_residual},
              {"window", {{"first", f.first}, {"last", f.last}, {"count", f.count}}}};
}

json report_to_json(const oracle::OracleReport& r) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return json{{"check", r.name},
              {"max_rel_error", finite_or_null(r.max_rel_error)},
              {"max_abs_error", finite_or_null(r.max_abs_error)},
              {"samples", r.samples},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"detail", r.detail}};
}

json build_manifest(const ex::SweepResult& result, std::string_view command, std::string_view csv_text,
                    std::string_view csv_name, std::string_view timestamp) {
  const json config = config_to_json(result.config);
  json skipped = json::array();
  for (const auto& s : result.skipped) skipped.push_back({{"n", s.n}, {"reason", s.reason}});
  json diagnostics = json::object();
  for (const auto& [k, v] : result.diagnostics) diagnostics[k] = v;
  return json{
      {"tool", kToolName},
      {"version", tool_version()},
      {"command", command},
      {"config", config},
      {"seed", result.config.seed},
      {"cutoff",
       {{"shape", weights::to_string(result.config.cutoff)},
        {"identifier", weights::cutoff_identifier(result.config.cutoff)},
        {"hash", hex64(fnv1a(weights::cutoff_identifier(result.config.cutoff)))}}},
      {"timestamp", timestamp},
      {"input_hash", hex64(fnv1a(config.dump()))},
      {"output", {{"csv", csv_name}, {"rows", result.rows.size()}, {"csv_hash", hex64(fnv1a(csv_text))}}},
      {"diagnostics", diagnostics},
      {"skipped", skipped},
  };
}

ex::SweepConfig config_from_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw ConfigError("manifest '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.contains("config")) throw ConfigError("manifest '" + path + "' has no config");
  return config_from_json(j.at("config"));
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ex::FitResult fit_table(const CsvTable& table, std::string_view x, std::string_view y,
                        const ex::FitOptions& options) {
  const std::size_t xi = table.column(x);
  const std::size_t yi = table.column(y);
  std::vector<double> n, s;
  const bool has_n = table.has_column("n");
  const bool has_s = table.has_column("s");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    n.push_back(has_n ? table.rows[r][table.column("n")] : static_cast<double>(r));
    s.push_back(has_s ? table.rows[r][table.column("s")] : std::nan(""));
  }
  if (options.s_filter && !has_s) throw ConfigError("--s filter given but the table has no s column");
  const auto idx = ex::fit_window(n, s, options);
  std::vector<double> xs, ys;
  for (std::size_t i : idx) {
    xs.push_back(table.rows[i][xi]);
    ys.push_back(table.rows[i][yi]);
  }
  auto f = ex::fit_exponent(xs, ys, options.min_r2, options.max_rms);
  if (!idx.empty()) {
    f.first = idx.front();
    f.last = idx.back();
  }
  return f;
}

}  // namespace glancelab::io
