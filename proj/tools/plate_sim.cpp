#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "plate/io.hpp"
#include "plate/stepper.hpp"
#include "plate/sweep.hpp"

namespace fs = std::filesystem;
using namespace plate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBlowup = 2;
constexpr int kExitNoInput = 66;   // unreadable input
constexpr int kExitCantWrite = 73; // unwritable output

int default_workers() {
  if (const char* env = std::getenv("PLATE_SIM_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SimulationConfig load_or_exit(const std::string& path) {
  try {
    return load_config(path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    std::exit(kExitFailed);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    std::exit(kExitNoInput);
  }
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    for (int p = a; p <= b; ++p) out.push_back(p);
    return out;
  }
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            double dt_override, double t_override) {
  SimulationConfig cfg = load_or_exit(config_path);
  try {
    if (dt_override > 0.0) cfg.dt = dt_override;
    if (t_override > 0.0) cfg.T = t_override;
    validate_config(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitFailed;
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);

  RunResult result = run_simulation(cfg);
  SimulationConfig effective = cfg;
  effective.dt = result.dt_used;

  try {
    write_config_echo(fs::path(out_dir) / "config_echo.cfg", effective);
    write_energy_csv(fs::path(out_dir) / "energy.csv", result.trace.records);
    write_snapshots_csv(fs::path(out_dir) / "snapshots.csv",
                        Mesh{cfg.L, cfg.N_nodes}, result.snapshots);
    write_regime_json(fs::path(out_dir) / "regime.json", result.regime);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitCantWrite;
  }

  std::cout << "verdict=" << to_string(result.verdict.kind);
  if (result.verdict.kind == VerdictKind::BlewUp)
    std::cout << " t_star=" << format_full(result.verdict.t);
  if (result.verdict.kind == VerdictKind::Failed)
    std::cout << " t_fail=" << format_full(result.verdict.t)
              << " reason=\"" << result.verdict.reason << '"';
  if (result.trace.fit)
    std::cout << " w=" << format_full(result.trace.fit->w)
              << " r2=" << format_full(result.trace.fit->r_squared);
  std::cout << " E0=" << format_full(result.trace.records.front().total)
            << " predicted=" << to_string(result.regime.predicted)
            << " dt=" << format_full(result.dt_used)
            << " retries=" << result.retries
            << " wall_s=" << result.wall_seconds << "\n";

  switch (result.verdict.kind) {
    case VerdictKind::Completed: return kExitOk;
    case VerdictKind::BlewUp: return kExitBlowup;
    case VerdictKind::Failed: return kExitFailed;
  }
  return kExitFailed;
}

int cmd_table1(const std::string& out_path, const std::string& p_spec, bool compare) {
  std::vector<double> p_list;
  try {
    p_list = parse_p_list(p_spec);
  } catch (const std::exception&) {
    std::cerr << "bad --p specification '" << p_spec << "'\n";
    return kExitFailed;
  }
  const std::vector<WellRow> rows = table1(p_list);
  try {
    write_table_csv(out_path, rows);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitCantWrite;
  }
  if (compare) {
    std::cout << "max_relative_deviation=" << format_full(table1_max_deviation(rows))
              << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& vary,
              const std::string& out_dir, int workers) {
  const SimulationConfig base = load_or_exit(config_path);
  std::vector<SweepParam> params;
  try {
    params = parse_sweep_spec(vary);
  } catch (const ConfigError& e) {
    std::cerr << "sweep error: " << e.what() << "\n";
    return kExitFailed;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(base, params, workers);
  } catch (const std::exception& e) {
    std::cerr << "sweep error: " << e.what() << "\n";
    return kExitFailed;
  }
  try {
    write_map_csv(fs::path(out_dir) / "map.csv", params, rows);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitCantWrite;
  }
  std::cout << "rows=" << rows.size() << " workers=" << workers << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clamped-beam simulator: fractional damping, delayed feedback, power source"};
  app.require_subcommand(1);

  std::string config_path, out_dir, out_path;
  double dt_override = 0.0, t_override = 0.0;

  CLI::App* run = app.add_subcommand("run", "simulate one configuration");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--dt", dt_override, "override time step");
  run->add_option("--T", t_override, "override final time");

  std::string p_spec = "3..9";
  bool compare = false;
  CLI::App* tab = app.add_subcommand("table1", "critical-amplitude table");
  tab->add_option("--p", p_spec, "exponent list, e.g. 3..9 or 4,5");
  tab->add_flag("--compare", compare, "report deviation from the published table");
  tab->add_option("--out", out_path, "output CSV path")->required();

  std::string vary;
  int workers = default_workers();
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over one or two ranges");
  sweep->add_option("--config", config_path, "base config file")->required();
  sweep->add_option("--vary", vary, "e.g. \"lambda 0.5:0.5:250; a2 0:0.1:3\"")->required();
  sweep->add_option("--workers", workers, "concurrent simulations");
  sweep->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_dir, dt_override, t_override);
  if (tab->parsed()) return cmd_table1(out_path, p_spec, compare);
  if (sweep->parsed()) return cmd_sweep(config_path, vary, out_dir, workers);
  return kExitFailed;
}
