#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <regex>

#include <doctest.h>

#include "glancelab/error.hpp"
#include "glancelab/io.hpp"

using namespace glancelab;
using namespace glancelab::io;
namespace ex = glancelab::experiments;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("glancelab_test_" + name)).string();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1000.0) == "1000");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  CsvTable t;
  t.header = {"n", "x", "y"};
  for (int i = 0; i < 200; ++i) t.rows.push_back({double(i), std::exp(u(rng)), u(rng) * 1e-7});
  t.rows.push_back({1.0, std::numeric_limits<double>::denorm_min(), std::nan("")});
  const std::string text = format_csv(t);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');
  const auto back = parse_csv(text);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (std::isnan(t.rows[i][j])) {
        CHECK(std::isnan(back.rows[i][j]));
      } else {
        CHECK(back.rows[i][j] == t.rows[i][j]);
      }
    }
  }
  CHECK(format_csv(back) == text);

  const auto path = temp_path("roundtrip.csv");
  write_csv(path, t);
  CHECK(read_text(path) == text);
  std::filesystem::remove(path);
}

TEST_CASE("csv errors") {
  CHECK_THROWS_AS(parse_csv(""), ConfigError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), ConfigError);
  CsvTable t;
  t.header = {"a"};
  CHECK_THROWS_AS(t.column("b"), ConfigError);
  CHECK_THROWS_AS(write_text("/nonexistent_dir_glancelab/x.csv", "x"), ConfigError);
  CHECK_THROWS_AS(read_text("/nonexistent_dir_glancelab/x.csv"), ConfigError);
}

TEST_CASE("hash") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
  CHECK(hex64(0) == "0000000000000000");
}

TEST_CASE("config json round trip") {
  ex::SweepConfig c;
  c.kind = ex::SweepKind::Quasimode;
  c.s_list = {0.0, 0.3};
  c.grid = {200.0, 2000.0, 8};
  c.seed = 0xfedcba9876543210ULL;
  c.law = ex::CoefficientLaw::GlancingBiased;
  c.cutoff = weights::CutoffShape::Smoothstep;
  c.selection = modes::Selection::SmallestLambda;
  c.target.alpha = 0.3;
  const auto j = config_to_json(c);
  const auto back = config_from_json(j);
  CHECK(config_to_json(back) == j);
  CHECK(back.seed == c.seed);

  auto extra = j;
  extra["colour"] = "blue";
  CHECK_THROWS_AS(config_from_json(extra), ConfigError);
  auto wrong = j;
  wrong["alpha"] = "half";
  CHECK_THROWS_AS(config_from_json(wrong), ConfigError);
}

TEST_CASE("manifest reproduces csv") {
  ex::SweepConfig c;
  c.grid = {1000.0, 5000.0, 6};
  const auto r = ex::run_sweep(c);
  const std::string csv = format_csv(to_table(r));
  const auto m = build_manifest(r, "test", csv, "run.csv", utc_timestamp());
  CHECK(m.at("tool") == kToolName);
  CHECK(m.at("output").at("rows") == r.rows.size());
  CHECK(m.at("output").at("csv_hash") == hex64(fnv1a(csv)));
  CHECK(m.at("cutoff").at("identifier") == weights::cutoff_identifier(c.cutoff));
  CHECK(m.contains("diagnostics"));
  const auto path = temp_path("run.manifest.json");
  write_text(path, m.dump(2));
  const auto again = ex::run_sweep(config_from_manifest(path));
  CHECK(format_csv(to_table(again)) == csv);
  std::filesystem::remove(path);
  CHECK(std::regex_match(utc_timestamp(), std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
}

TEST_CASE("fit from table") {
  CsvTable t;
  t.header = {"n", "h", "weighted_norm", "s"};
  for (int i = 0; i < 16; ++i) {
    const double n = 100.0 * std::pow(1.3, i);
    t.rows.push_back({n, 1.0 / n, 2.0 * std::pow(1.0 / n, -0.2), 0.0});
    t.rows.push_back({n, 1.0 / n, 2.0 * std::pow(1.0 / n, 0.1), 0.4});
  }
  ex::FitOptions o;
  o.s_filter = 0.4;
  const auto f = fit_table(t, "h", "weighted_norm", o);
  CHECK(f.slope == doctest::Approx(0.1));
  CHECK(f.count == 12);
  o.s_filter = 0.0;
  CHECK(fit_table(t, "h", "weighted_norm", o).slope == doctest::Approx(-0.2));
  const auto j = fit_to_json(f);
  CHECK(j.contains("stderr"));
  CHECK(j.contains("r2"));
  CHECK_THROWS_AS(fit_table(t, "h", "nope", o), ConfigError);
}

TEST_CASE("svg plot") {
  PlotSeries a{"pow", {}, {}, std::nullopt};
  for (int i = 1; i <= 10; ++i) {
    a.x.push_back(i * 10.0);
    a.y.push_back(5.0 * std::pow(i * 10.0, 0.35));
  }
  a.fit = ex::fit_exponent(a.x, a.y);
  const std::string svg = render_svg({a}, "x", "y");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("slope 0.3500") != std::string::npos);
  CHECK(render_svg({a}, "x", "y") == svg);

  PlotSeries b = a;
  b.label = "other";
  for (auto& y : b.y) y *= 2.0;
  const std::string two = render_svg({a, b}, "x", "y");
  CHECK(two.find("#1f77b4") != std::string::npos);
  CHECK(two.find("#d62728") != std::string::npos);
  CHECK(two.find(">other slope") != std::string::npos);

  PlotSeries bad = a;
  bad.y[3] = -1.0;
  CHECK_THROWS_AS(render_svg({bad}, "x", "y"), ConfigError);

  CsvTable t;
  t.header = {"n", "h", "weighted_norm", "s"};
  const auto path = temp_path("plot.svg");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit_plot(t, "h", "weighted_norm", "s", {}, path), ConfigError);
  CHECK_FALSE(std::filesystem::exists(path));
  for (int i = 0; i < 12; ++i) {
    const double n = 100.0 * std::pow(1.4, i);
    t.rows.push_back({n, 1.0 / n, std::pow(n, 0.2), 0.0});
    t.rows.push_back({n, 1.0 / n, std::pow(n, 0.05), 0.25});
  }
  emit_plot(t, "h", "weighted_norm", "s", {}, path);
  const std::string text = read_text(path);
  CHECK(text.find("s=0 slope -0.2000") != std::string::npos);
  CHECK(text.find("s=0.25 slope -0.0500") != std::string::npos);
  CHECK_THROWS_AS(emit_plot(t, "h", "missing", "", {}, path), ConfigError);
  std::filesystem::remove(path);
}
