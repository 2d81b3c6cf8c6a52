#include "plate/sweep.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "plate/io.hpp"
#include "plate/observables.hpp"

namespace plate {

std::vector<double> SweepParam::values() const {
  std::vector<double> out;
  if (!(step > 0.0)) throw ConfigError("sweep: step must be positive for '" + name + "'");
  // inclusive end within a half-step tolerance against accumulation error
  const long count = static_cast<long>(std::floor((stop - start) / step + 0.5)) + 1;
  for (long k = 0; k < count; ++k) {
    const double v = start + static_cast<double>(k) * step;
    if (v > stop + 0.5 * step) break;
    out.push_back(v);
  }
  return out;
}

std::vector<SweepParam> parse_sweep_spec(const std::string& spec) {
  std::vector<SweepParam> params;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::stringstream ps(part);
    std::string name, range;
    if (!(ps >> name >> range))
      throw ConfigError("sweep: expected '<param> <start>:<step>:<stop>', got '" + part + "'");
    std::string extra;
    if (ps >> extra) throw ConfigError("sweep: trailing tokens in '" + part + "'");
    SweepParam p;
    p.name = name;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &p.start, &p.step, &p.stop) != 3)
      throw ConfigError("sweep: bad range '" + range + "' (want start:step:stop)");
    params.push_back(p);
  }
  if (params.empty()) throw ConfigError("sweep: empty spec");
  if (params.size() > 2) throw ConfigError("sweep: at most two parameters");
  return params;
}

SimulationConfig apply_param(const SimulationConfig& cfg, const std::string& name,
                             double value) {
  SimulationConfig out = cfg;
  if (name == "lambda") out.lambda = value;
  else if (name == "a1") out.a1 = value;
  else if (name == "a2") out.a2 = value;
  else if (name == "theta") out.theta = value;
  else if (name == "vartheta") out.vartheta = value;
  else if (name == "p") out.p = value;
  else if (name == "s_delay") out.s_delay = value;
  else if (name == "dt") out.dt = value;
  else if (name == "T") out.T = value;
  else if (name == "L") out.L = value;
  else throw ConfigError("sweep: cannot vary '" + name + "'");
  return validate_config(out);
}

std::vector<SweepRow> run_sweep(const SimulationConfig& base,
                                const std::vector<SweepParam>& params, int workers) {
  std::vector<std::vector<double>> axes;
  for (const SweepParam& p : params) axes.push_back(p.values());

  std::vector<std::vector<double>> points;
  if (axes.size() == 1) {
    for (double v : axes[0]) points.push_back({v});
  } else if (axes.size() == 2) {
    for (double v0 : axes[0])
      for (double v1 : axes[1]) points.push_back({v0, v1});
  } else {
    throw ConfigError("sweep: expected one or two parameters");
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= points.size()) return;
      SimulationConfig cfg = base;
      for (std::size_t k = 0; k < params.size(); ++k)
        cfg = apply_param(cfg, params[k].name, points[idx][k]);
      RunOptions opts;
      opts.snapshot_stride = 0;  // sweeps keep only the map row
      RunResult r = run_simulation(cfg, opts);
      SweepRow row;
      row.values = points[idx];
      row.verdict = r.verdict;
      row.E0 = closed_form::initial_energy(cfg.lambda, cfg.p, cfg.L);
      row.w = r.trace.fit ? r.trace.fit->w : nan;
      row.t_star = r.verdict.kind == VerdictKind::BlewUp ? r.verdict.t : nan;
      rows[idx] = std::move(row);
    }
  };

  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(points.size())));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return rows;
}

void write_map_csv(const std::filesystem::path& path,
                   const std::vector<SweepParam>& params,
                   const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const SweepParam& p : params) out << p.name << ',';
  out << "verdict,E0,w,t_star\n";
  for (const SweepRow& r : rows) {
    for (double v : r.values) out << format_full(v) << ',';
    out << to_string(r.verdict.kind) << ',' << format_full(r.E0) << ','
        << format_full(r.w) << ',' << format_full(r.t_star) << '\n';
  }
}

}  // namespace plate
