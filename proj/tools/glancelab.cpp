#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glancelab/error.hpp"
#include "glancelab/experiments.hpp"
#include "glancelab/io.hpp"
#include "glancelab/selftest.hpp"

namespace {

namespace ex = glancelab::experiments;
namespace io = glancelab::io;
namespace modes = glancelab::modes;
namespace weights = glancelab::weights;

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kOracle = 3 };

// Flags that were given (on the command line or in a config file) are
// applied on top of the base config, in declaration order.
class Binder {
 public:
  explicit Binder(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, const std::string& desc, std::function<void(ex::SweepConfig&, const T&)> set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_->add_option(name, *value, desc);
    appliers_.push_back([opt, value, set](ex::SweepConfig& c) {
      if (opt->count() > 0) set(c, *value);
    });
    return opt;
  }

  void apply(ex::SweepConfig& c) const {
    for (const auto& f : appliers_) f(c);
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(ex::SweepConfig&)>> appliers_;
};

struct SweepCommand {
  std::string name;
  CLI::App* app = nullptr;
  std::unique_ptr<Binder> binder;
  std::string out;
  std::string manifest;
  CLI::Option* selection = nullptr;
  std::function<ex::SweepConfig()> defaults;
  std::function<void(const ex::SweepConfig&)> check;
};

void add_scale_flags(Binder& b) {
  b.add<double>("--alpha", "Scale exponent of the boundary-layer window", [](auto& c, double v) { c.target.alpha = v; });
  b.add<double>("--offset-const", "Window offset constant M", [](auto& c, double v) { c.target.offset_const = v; });
}

void add_grid_flags(Binder& b, const char* min_name, const char* max_name, const char* count_name) {
  b.add<double>(min_name, "Smallest grid value", [](auto& c, double v) { c.grid.min = v; });
  b.add<double>(max_name, "Largest grid value", [](auto& c, double v) { c.grid.max = v; });
  b.add<int>(count_name, "Number of geometric grid points", [](auto& c, int v) { c.grid.count = v; });
}

void add_band_flags(Binder& b) {
  b.add<double>("--rho1", "Lower band exponent", [](auto& c, double v) { c.rho1 = v; });
  b.add<double>("--rho2", "Upper band exponent", [](auto& c, double v) { c.rho2 = v; });
}

void add_s_flag(Binder& b) {
  b.add<std::vector<double>>("--s", "Weight exponents (repeatable)", [](auto& c, const std::vector<double>& v) {
    c.s_list = v;
  });
}

void add_cutoff_flag(Binder& b) {
  b.add<std::string>("--cutoff", "Cutoff transition: exp-glue or smoothstep",
                     [](auto& c, const std::string& v) { c.cutoff = weights::cutoff_from_string(v); });
}

CLI::Option* add_selection_flag(Binder& b) {
  return b.add<std::string>("--selection", "Mode selection: smallest-lambda, max-trace, max-normal-derivative",
                            [](auto& c, const std::string& v) { c.selection = modes::selection_from_string(v); });
}

void add_out_flags(SweepCommand& cmd) {
  cmd.app->add_option("--out", cmd.out, "Output prefix; writes PREFIX.csv and PREFIX.manifest.json")->required();
  cmd.app->add_option("--from-manifest", cmd.manifest, "Start from the config recorded in a manifest");
}

std::string basename_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void run_sweep_command(const SweepCommand& cmd, const std::string& invocation) {
  ex::SweepConfig config = cmd.manifest.empty() ? cmd.defaults() : io::config_from_manifest(cmd.manifest);
  cmd.binder->apply(config);
  if (cmd.manifest.empty() && cmd.selection && cmd.selection->count() == 0 &&
      config.kind == ex::SweepKind::NormalDerivative) {
    config.selection = modes::Selection::MaxNormalDerivative;
  }
  cmd.check(config);

  const ex::SweepResult result = ex::run_sweep(config);
  const std::string csv = io::format_csv(io::to_table(result));
  const std::string csv_path = cmd.out + ".csv";
  const auto manifest = io::build_manifest(result, invocation, csv, basename_of(csv_path), io::utc_timestamp());
  io::write_text(csv_path, csv);
  io::write_text(cmd.out + ".manifest.json", manifest.dump(2) + "\n");
  std::fprintf(stderr, "%s: %zu rows, %zu skipped -> %s\n", cmd.name.c_str(), result.rows.size(),
               result.skipped.size(), csv_path.c_str());
}

void require_kind(const ex::SweepConfig& c, ex::Domain domain, std::initializer_list<ex::SweepKind> kinds,
                  const std::string& cmd) {
  if (c.domain != domain) throw glancelab::ConfigError(cmd + " does not run " + std::string(ex::to_string(c.domain)) + " sweeps");
  for (auto k : kinds) {
    if (c.kind == k) return;
  }
  throw glancelab::ConfigError(cmd + " does not run " + std::string(ex::to_string(c.kind)) + " sweeps");
}

const std::vector<double> kBandSList{0.0, 0.1, 0.25, 0.4};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-trace sweeps for Dirichlet eigenmodes of the disk and sphere"};
  app.set_version_flag("--version", std::string(io::tool_version()));
  app.set_config("--config", "", "INI/TOML config file; [section] names match subcommands, flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  std::vector<std::unique_ptr<SweepCommand>> sweeps;
  auto make_sweep = [&](const std::string& name, const std::string& desc) -> SweepCommand& {
    auto cmd = std::make_unique<SweepCommand>();
    cmd->name = name;
    cmd->app = app.add_subcommand(name, desc);
    cmd->binder = std::make_unique<Binder>(cmd->app);
    sweeps.push_back(std::move(cmd));
    return *sweeps.back();
  };

  {
    auto& cmd = make_sweep("sweep-disk", "Single-mode sweep on the disk");
    auto& b = *cmd.binder;
    b.add<std::string>("--kind", "amplitude, sharpness, or normal-derivative", [](auto& c, const std::string& v) {
      c.kind = ex::kind_from_string(v);
      if (c.kind != ex::SweepKind::Amplitude) c.s_list = kBandSList;
    });
    add_scale_flags(b);
    add_grid_flags(b, "--n-min", "--n-max", "--points");
    add_band_flags(b);
    add_s_flag(b);
    b.add<double>("--radius", "Radius of the interior circle H", [](auto& c, double v) { c.radius = v; });
    cmd.selection = add_selection_flag(b);
    add_cutoff_flag(b);
    add_out_flags(cmd);
    cmd.defaults = [] { return ex::SweepConfig{}; };
    cmd.check = [](const ex::SweepConfig& c) {
      require_kind(c, ex::Domain::Disk,
                   {ex::SweepKind::Amplitude, ex::SweepKind::Sharpness, ex::SweepKind::NormalDerivative}, "sweep-disk");
    };
  }
  {
    auto& cmd = make_sweep("sweep-sphere", "Single-mode sweep on the sphere at the equator");
    auto& b = *cmd.binder;
    b.add<std::string>("--kind", "amplitude or sharpness", [](auto& c, const std::string& v) {
      c.kind = ex::kind_from_string(v);
      if (c.kind != ex::SweepKind::Amplitude) c.s_list = kBandSList;
    });
    add_scale_flags(b);
    add_grid_flags(b, "--l-min", "--l-max", "--points");
    add_band_flags(b);
    add_s_flag(b);
    add_cutoff_flag(b);
    add_out_flags(cmd);
    cmd.defaults = [] {
      ex::SweepConfig c;
      c.domain = ex::Domain::Sphere;
      return c;
    };
    cmd.check = [](const ex::SweepConfig& c) {
      require_kind(c, ex::Domain::Sphere, {ex::SweepKind::Amplitude, ex::SweepKind::Sharpness}, "sweep-sphere");
    };
  }
  {
    auto& cmd = make_sweep("quasimode", "Random quasimodes in spectral windows of the disk");
    auto& b = *cmd.binder;
    add_grid_flags(b, "--lambda-min", "--lambda-max", "--windows");
    b.add<double>("--width", "Spectral window width", [](auto& c, double v) { c.window_width = v; });
    b.add<int>("--trials", "Random draws per window", [](auto& c, int v) { c.trials = v; });
    b.add<std::uint64_t>("--seed", "RNG seed", [](auto& c, std::uint64_t v) { c.seed = v; });
    add_s_flag(b);
    b.add<double>("--rho", "Exponent rho of the weight G", [](auto& c, double v) { c.rho = v; });
    b.add<double>("--radius", "Radius of the interior circle H", [](auto& c, double v) { c.radius = v; });
    b.add<std::string>("--law", "Coefficient law: gaussian or glancing-biased",
                       [](auto& c, const std::string& v) { c.law = ex::law_from_string(v); });
    b.add<double>("--glancing-fraction", "Fraction of modes kept by the glancing-biased law",
                  [](auto& c, double v) { c.glancing_fraction = v; });
    add_cutoff_flag(b);
    add_out_flags(cmd);
    cmd.defaults = [] {
      ex::SweepConfig c;
      c.kind = ex::SweepKind::Quasimode;
      c.grid = {200.0, 2000.0, 8};
      c.s_list = {0.3};
      return c;
    };
    cmd.check = [](const ex::SweepConfig& c) {
      require_kind(c, ex::Domain::Disk, {ex::SweepKind::Quasimode}, "quasimode");
    };
  }
  {
    auto& cmd = make_sweep("normal-band", "Normal-band bound for single disk modes");
    auto& b = *cmd.binder;
    add_scale_flags(b);
    add_grid_flags(b, "--n-min", "--n-max", "--points");
    b.add<double>("--beta", "Use hbar = h^beta (0 takes hbar = xi_d)", [](auto& c, double v) { c.beta = v; });
    b.add<double>("--radius", "Radius of the interior circle H", [](auto& c, double v) { c.radius = v; });
    cmd.selection = add_selection_flag(b);
    add_out_flags(cmd);
    cmd.defaults = [] {
      ex::SweepConfig c;
      c.kind = ex::SweepKind::NormalBand;
      return c;
    };
    cmd.check = [](const ex::SweepConfig& c) {
      require_kind(c, ex::Domain::Disk, {ex::SweepKind::NormalBand}, "normal-band");
    };
  }

  std::string fit_in, fit_x = "h", fit_y = "weighted_norm";
  ex::FitOptions fit_opts;
  double fit_s = 0.0;
  auto* fit = app.add_subcommand("fit", "Fit a log-log exponent to two CSV columns; prints JSON");
  fit->add_option("--in", fit_in, "Input CSV")->required();
  fit->add_option("--x", fit_x, "Abscissa column");
  fit->add_option("--y", fit_y, "Ordinate column");
  fit->add_option("--drop-low", fit_opts.drop_low, "Fraction of smallest-n rows dropped");
  fit->add_option("--min-r2", fit_opts.min_r2, "Smallest accepted r2 for scattered data");
  fit->add_option("--max-rms", fit_opts.max_rms, "Largest rms log residual accepted without the r2 gate");
  auto* fit_s_opt = fit->add_option("--s", fit_s, "Use only rows with this s");

  std::string plot_in, plot_x = "h", plot_y = "weighted_norm", plot_series, plot_out;
  ex::FitOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "Log-log SVG of two CSV columns with fitted lines");
  plot->add_option("--in", plot_in, "Input CSV")->required();
  plot->add_option("--x", plot_x, "Abscissa column");
  plot->add_option("--y", plot_y, "Ordinate column");
  plot->add_option("--series", plot_series, "Column whose distinct values split the series (e.g. s)");
  plot->add_option("--drop-low", plot_opts.drop_low, "Fraction of smallest-n rows dropped from each fit");
  plot->add_option("--out", plot_out, "Output SVG path")->required();

  auto* selftest = app.add_subcommand("selftest", "Run every oracle comparison; prints JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  const std::string invocation = command_line(argc, argv);
  try {
    for (const auto& cmd : sweeps) {
      if (cmd->app->parsed()) run_sweep_command(*cmd, invocation);
    }
    if (fit->parsed()) {
      if (fit_s_opt->count() > 0) fit_opts.s_filter = fit_s;
      const auto result = io::fit_table(io::read_csv(fit_in), fit_x, fit_y, fit_opts);
      std::cout << io::fit_to_json(result).dump(2) << "\n";
    }
    if (plot->parsed()) io::emit_plot(io::read_csv(plot_in), plot_x, plot_y, plot_series, plot_opts, plot_out);
    if (selftest->parsed()) {
      const auto reports = glancelab::selftest::run_all();
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : reports) j.push_back(io::report_to_json(r));
      std::cout << j.dump(2) << "\n";
      if (!glancelab::selftest::all_passed(reports)) throw glancelab::OracleFailure("oracle suite failed");
    }
  } catch (const glancelab::OracleFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOracle;
  } catch (const glancelab::NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  }
  return kOk;
}
