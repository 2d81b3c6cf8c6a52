// Acceptance suite: one numbered criterion per invocation (or "all").
// Each criterion prints a single PASS/FAIL line; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "plate/io.hpp"
#include "plate/observables.hpp"
#include "plate/stability.hpp"
#include "plate/stepper.hpp"
#include "plate/sweep.hpp"
#include "support/oracles.hpp"

using namespace plate;
namespace fs = std::filesystem;

#ifndef PLATE_SIM_BIN
#define PLATE_SIM_BIN "plate_sim"
#endif

namespace {

struct Check {
  std::string label;
  bool ok = false;
  std::string detail;
};

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(const std::string& label, bool ok, const std::string& detail = "") {
    checks_.push_back({label, ok, detail});
  }

  bool finish() const {
    bool all = true;
    std::ostringstream parts;
    for (const Check& c : checks_) {
      all = all && c.ok;
      parts << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.label;
      if (!c.detail.empty()) parts << " (" << c.detail << ")";
      parts << "\n";
    }
    std::cout << name_ << ": " << (all ? "PASS" : "FAIL") << "\n" << parts.str();
    std::cout.flush();
    return all;
  }

 private:
  std::string name_;
  std::vector<Check> checks_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

SimulationConfig example1() {
  SimulationConfig c;
  c.lambda = 1.0;
  c.p = 5.0;
  c.a1 = 5.0;
  c.a2 = 0.4;
  c.theta = 0.5;
  c.vartheta = 0.3;
  c.s_delay = 5.0;
  c.N_nodes = 250;
  c.dt = 1e-3;
  c.T = 100.0;
  return c;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "plate_acceptance";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, std::string* first_line = nullptr) {
  const fs::path out = work_dir() / "cli_stdout.txt";
  const std::string cmd =
      std::string(PLATE_SIM_BIN) + " " + args + " > " + out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (first_line) {
    std::ifstream in(out);
    std::getline(in, *first_line);
  }
  return WEXITSTATUS(rc);
}

double energy_at(const std::vector<EnergyRecord>& recs, double t) {
  for (const EnergyRecord& r : recs)
    if (r.t >= t - 1e-12) return r.total;
  return recs.back().total;
}

// --- criteria -------------------------------------------------------------

bool criterion_1() {
  Criterion c("C01 critical-value table regression");
  const fs::path out = work_dir() / "table1.csv";
  const auto t0 = std::chrono::steady_clock::now();
  std::string line;
  const int rc = run_cli("table1 --compare --out " + out.string(), &line);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect("exit code 0", rc == 0, "rc=" + std::to_string(rc));

  double dev = 1.0;
  if (line.rfind("max_relative_deviation=", 0) == 0)
    dev = std::stod(line.substr(line.find('=') + 1));
  c.expect("all 21 values within 1% of the reference", dev <= 1e-2,
           "max deviation " + fmt(dev));
  c.expect("runtime below 1 s", elapsed < 1.0, fmt(elapsed) + " s");
  return c.finish();
}

bool criterion_2() {
  Criterion c("C02 decay run (lambda=1, p=5)");
  const SimulationConfig cfg = example1();
  const RunResult r = run_simulation(cfg);
  const double e0 = r.trace.records.front().total;
  c.expect("E(0) within 0.5% of 0.400127",
           std::abs(e0 - 0.400127) / 0.400127 <= 5e-3, "E0=" + fmt(e0));
  c.expect("completed to T=100", r.verdict.kind == VerdictKind::Completed,
           to_string(r.verdict.kind));
  bool wpos = false, r2ok = false;
  double w = 0.0, r2 = 0.0;
  try {
    const DecayFit fit = fit_decay_rate(r.trace.records, 10.0);
    w = fit.w;
    r2 = fit.r_squared;
    wpos = w > 0.0;
    r2ok = r2 > 0.99;
  } catch (const std::domain_error&) {
  }
  c.expect("log-energy fit on [10,100] gives w > 0", wpos, "w=" + fmt(w));
  c.expect("fit quality r^2 > 0.99", r2ok, "r2=" + fmt(r2));
  c.expect("runtime below 5 min", r.wall_seconds < 300.0, fmt(r.wall_seconds) + " s");
  return c.finish();
}

bool criterion_3() {
  Criterion c("C03 blow-up run (lambda=200, p=5)");
  SimulationConfig cfg = example1();
  cfg.lambda = 200.0;
  cfg.dt = 1e-5;
  cfg.T = 0.1;
  const RunResult r = run_simulation(cfg);
  const double e0 = r.trace.records.front().total;
  c.expect("E(0) within 1% of -496.4864",
           std::abs(e0 - (-496.4864)) / 496.4864 <= 1e-2, "E0=" + fmt(e0));
  const auto tstar = detect_blowup(r.trace, cfg);
  c.expect("blow-up flagged", tstar.has_value());
  if (tstar)
    c.expect("t* in [0.02, 0.08]", *tstar >= 0.02 && *tstar <= 0.08,
             "t*=" + fmt(*tstar));
  return c.finish();
}

bool criterion_4() {
  Criterion c("C04 blow-up with positive initial energy (lambda=144.3)");
  SimulationConfig cfg = example1();
  cfg.lambda = 144.3;
  cfg.a1 = 1.0;
  cfg.a2 = 0.08;
  cfg.dt = 1e-5;
  cfg.T = 0.2;
  const RunResult r = run_simulation(cfg);
  const double e0 = r.trace.records.front().total;
  c.expect("E(0) within 1% of 5119.225066",
           std::abs(e0 - 5119.225066) / 5119.225066 <= 1e-2, "E0=" + fmt(e0));
  const auto tstar = detect_blowup(r.trace, cfg);
  c.expect("blow-up flagged", tstar.has_value());
  if (tstar)
    c.expect("t* in (0.1, 0.15]", *tstar > 0.1 && *tstar <= 0.15,
             "t*=" + fmt(*tstar));
  return c.finish();
}

bool criterion_5() {
  Criterion c("C05 growth without blow-up (a1=1, a2=2)");
  SimulationConfig cfg = example1();
  cfg.a1 = 1.0;
  cfg.a2 = 2.0;
  const RunResult r = run_simulation(cfg);
  c.expect("no blow-up through T=100", r.verdict.kind == VerdictKind::Completed,
           to_string(r.verdict.kind));
  if (r.verdict.kind == VerdictKind::Completed) {
    const double e10 = energy_at(r.trace.records, 10.0);
    const double e100 = r.trace.records.back().total;
    c.expect("E(100) exceeds E(10)", e100 > e10,
             "E(10)=" + fmt(e10) + " E(100)=" + fmt(e100));
  }
  return c.finish();
}

bool criterion_6() {
  Criterion c("C06 dissipative energy law (source off, a2=0)");
  SimulationConfig cfg = example1();
  cfg.source_enabled = false;
  cfg.a2 = 0.0;
  cfg.N_nodes = 100;
  cfg.T = 10.0;  // 1e4 steps
  Simulation sim(cfg);
  double prev = sim.energy().total;
  const double slack = 1e-12 * std::max(1.0, prev);
  double worst = -1e300;
  bool ok = true;
  for (int n = 0; n < 10000; ++n) {
    if (sim.step() != StepStatus::Ok) {
      ok = false;
      break;
    }
    const double e = sim.energy().total;
    worst = std::max(worst, e - prev);
    prev = e;
  }
  c.expect("10^4 steps completed", ok);
  c.expect("E never increases beyond 1e-12*max(1,E0)", worst <= slack,
           "max increment " + fmt(worst));
  return c.finish();
}

bool criterion_7() {
  Criterion c("C07 conservation oracle (all damping off)");
  SimulationConfig cfg = example1();
  cfg.source_enabled = false;
  cfg.fractional_enabled = false;
  cfg.a1 = 0.0;
  cfg.a2 = 0.0;
  cfg.N_nodes = 100;
  cfg.T = 10.0;
  Simulation sim(cfg);
  const double e0 = sim.energy().total;
  double emin = e0, emax = e0;
  bool ok = true;
  for (int n = 0; n < 10000; ++n) {
    if (sim.step() != StepStatus::Ok) {
      ok = false;
      break;
    }
    const double e = sim.energy().total;
    emin = std::min(emin, e);
    emax = std::max(emax, e);
  }
  const double drift = (emax - emin) / e0;
  c.expect("10^4 steps completed", ok);
  c.expect("relative drift below 1e-9", drift < 1e-9, "drift=" + fmt(drift));
  return c.finish();
}

bool criterion_8() {
  Criterion c("C08 fundamental-frequency oracle");
  const FemSystem sys = FemSystem::assemble(Mesh{1.0, 250});
  BandedCholesky kchol;
  if (!kchol.factor(sys.stiffness())) {
    c.expect("stiffness factorization", false);
    return c.finish();
  }
  NodalField x(sys.n_free(), 1.0);
  double mu = 0.0;
  for (int it = 0; it < 400; ++it) {
    NodalField y = kchol.solve(sys.mass().matvec(x));
    double norm = 0.0;
    for (double v : y) norm = std::max(norm, std::abs(v));
    for (double& v : y) v /= norm;
    const double mu_new =
        sys.stiffness().quadratic_form(y) / sys.mass().quadratic_form(y);
    const bool settled = std::abs(mu_new - mu) < 1e-13 * mu_new && it > 8;
    mu = mu_new;
    x = std::move(y);
    if (settled) break;
  }
  const double k1 = 4.730040744862704;
  const double rel = std::abs(std::sqrt(mu) - k1 * k1) / (k1 * k1);
  c.expect("omega_1 within 0.1% of k1^2", rel < 1e-3,
           "omega=" + fmt(std::sqrt(mu)) + " target=" + fmt(k1 * k1));
  return c.finish();
}

bool criterion_9() {
  Criterion c("C09 memory-kernel oracle (V(t)=t)");
  const double th = 0.5, vt = 0.3, dt = 1e-3;
  const XiGrid grid = build_grid(th, 200.0, 4000);
  DiffusiveField field(grid.M_xi, 1);
  const NodalField vhalf(1, 1.0);
  const double b = std::sin(th * M_PI) / M_PI;
  std::vector<double> out(1001, 0.0);
  for (int n = 0; n < 1000; ++n) {
    update_aux(grid, field, vt, dt, vhalf);
    out[n + 1] = 2.0 * fractional_force(grid, field, b)[0];
  }
  const double closed = oracles::tempered_derivative_of_t(th, vt, 1.0);
  const double rel = std::abs(out[1000] - closed) / closed;
  c.expect("closed form matched within 1% at t=1", rel <= 1e-2,
           "relative error " + fmt(rel));

  std::vector<double> v_samples(1001);
  for (int n = 0; n <= 1000; ++n) v_samples[n] = n * dt;
  double worst = 0.0;
  for (int n = 100; n <= 1000; n += 10) {
    const double l1 = oracles::l1_tempered_derivative(v_samples, dt, th, vt, n);
    worst = std::max(worst, std::abs(out[n] - l1) / std::abs(l1));
  }
  c.expect("within 2% of the convolution oracle on [0.1, 1]", worst <= 2e-2,
           "max relative gap " + fmt(worst));
  return c.finish();
}

bool criterion_10() {
  Criterion c("C10 memory-weight quadrature vs closed form");
  for (const double th : {0.3, 0.5, 0.7}) {
    for (const double vt : {0.3, 1.0}) {
      const XiGrid grid = build_grid(th, 200.0, 40000);
      const double q = quadrature_A0(grid, vt);
      const double a = analytic_A0(th, vt);
      const double rel = std::abs(q - a) / a;
      std::ostringstream label;
      label << "theta=" << th << " vartheta=" << vt << " within 1e-2";
      c.expect(label.str(), rel <= 1e-2, "relative error " + fmt(rel));
    }
  }
  return c.finish();
}

bool criterion_11() {
  Criterion c("C11 sweep determinism across worker counts");
  const fs::path cfg_path = work_dir() / "sweep_base.cfg";
  {
    SimulationConfig base = example1();
    base.N_nodes = 80;
    base.M_xi = 100;
    base.dt = 1e-5;
    base.T = 0.05;
    base.s_delay = 0.01;
    std::ofstream out(cfg_path);
    out << to_key_value_text(base);
  }
  const fs::path d1 = work_dir() / "sweep_w1";
  const fs::path d8 = work_dir() / "sweep_w8";
  fs::remove_all(d1);
  fs::remove_all(d8);
  const std::string vary = "\"lambda 1:99.5:200\"";
  const int rc1 = run_cli("sweep --config " + cfg_path.string() + " --vary " + vary +
                          " --workers 1 --out " + d1.string());
  const int rc8 = run_cli("sweep --config " + cfg_path.string() + " --vary " + vary +
                          " --workers 8 --out " + d8.string());
  c.expect("both sweeps exit 0", rc1 == 0 && rc8 == 0,
           "rc1=" + std::to_string(rc1) + " rc8=" + std::to_string(rc8));

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string m1 = slurp(d1 / "map.csv");
  const std::string m8 = slurp(d8 / "map.csv");
  c.expect("map.csv byte-identical for workers 1 and 8", !m1.empty() && m1 == m8,
           std::to_string(m1.size()) + " bytes");
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  using Fn = bool (*)();
  const std::vector<Fn> criteria = {criterion_1, criterion_2, criterion_3,
                                    criterion_4, criterion_5, criterion_6,
                                    criterion_7, criterion_8, criterion_9,
                                    criterion_10, criterion_11};
  int failures = 0;
  if (which == "all") {
    for (const Fn fn : criteria)
      if (!fn()) ++failures;
  } else {
    const int idx = std::atoi(which.c_str());
    if (idx < 1 || idx > static_cast<int>(criteria.size())) {
      std::cerr << "usage: plate_acceptance [1-" << criteria.size() << "|all]\n";
      return 64;
    }
    if (!criteria[idx - 1]()) ++failures;
  }
  return failures;
}
