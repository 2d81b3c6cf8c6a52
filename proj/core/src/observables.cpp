#include "plate/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace plate {

namespace {

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double eps) {
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, 48);
}

/// sum_l mu_l (G_l^T M G_l) dxi
double mode_mass_norms(const XiGrid& grid, const DiffusiveField& field,
                       const BandedSymmetric& mass) {
  double acc = 0.0;
  for (int l = 0; l < field.n_modes; ++l)
    acc += grid.mu[l] * mass.quadratic_form(field.row(l));
  return acc * grid.dxi;
}

}  // namespace

EnergyRecord discrete_energy(const FemSystem& sys, const SimulationConfig& cfg,
                             const State& state, const XiGrid& grid,
                             const DiffusiveField& field, const DelayBuffer& buf) {
  EnergyRecord r;
  r.t = state.t;
  r.kinetic = 0.5 * sys.mass().quadratic_form(state.qd);
  r.elastic = 0.5 * sys.stiffness().quadratic_form(state.q);
  const double b = cfg.b_value();
  r.fractional = b > 0.0 ? 0.5 * b * mode_mass_norms(grid, field, sys.mass()) : 0.0;
  r.delay = 0.5 * cfg.a2 * buf.running_sum();
  r.potential = cfg.source_enabled ? sys.lp_integral(state.q, cfg.p) / cfg.p : 0.0;
  r.total = r.kinetic + r.elastic + r.fractional + r.delay - r.potential;
  r.sup_norm = sys.sup_norm(state.q);
  return r;
}

double continuous_E0(const SimulationConfig& cfg) {
  const double L = cfg.L;
  const double lam = cfg.lambda;
  auto d2 = [&](double x) {
    const double u = x / L;
    const double v = lam / (L * L) * (2.0 - 12.0 * u + 12.0 * u * u);
    return v * v;
  };
  auto vp = [&](double x) {
    const double u = x / L;
    return std::pow(std::abs(lam * u * u * (1.0 - u) * (1.0 - u)), cfg.p);
  };
  const double bend = adaptive_simpson(d2, 0.0, L, 1e-14 * std::max(1.0, lam * lam));
  const double lp = adaptive_simpson(vp, 0.0, L, 1e-14 * std::max(1.0, std::pow(lam, cfg.p)));
  return 0.5 * bend - lp / cfg.p;
}

Functionals functionals_IJ(const FemSystem& sys, const SimulationConfig& cfg,
                           const State& state, const XiGrid& grid,
                           const DiffusiveField& field, const DelayBuffer& buf,
                           std::optional<double> v_weight) {
  double v = 0.0;
  if (v_weight) {
    v = *v_weight;
  } else {
    const Interval iv = admissible_v_interval(cfg);
    if (iv.empty())
      throw std::domain_error("functionals_IJ: empty v interval and no explicit v");
    v = iv.midpoint();
  }
  const double b = cfg.b_value();
  const double elastic2 = sys.stiffness().quadratic_form(state.q);
  const double gnorm = b > 0.0 ? mode_mass_norms(grid, field, sys.mass()) : 0.0;
  const double lp = cfg.source_enabled ? sys.lp_integral(state.q, cfg.p) : 0.0;
  // v s int int |z|^2, sampled on the ring: v s (dt/s) * running_sum
  const double delay_term = v * cfg.dt * buf.running_sum();
  Functionals f;
  f.I = elastic2 + b * gnorm - lp + delay_term;
  f.J = 0.5 * elastic2 + 0.5 * b * gnorm - lp / cfg.p + delay_term;
  return f;
}

DecayFit fit_decay_rate(const std::vector<EnergyRecord>& records, double t_start) {
  std::vector<double> ts, ys;
  for (const EnergyRecord& r : records) {
    if (r.t < t_start) continue;
    if (!(r.total > 0.0))
      throw std::domain_error("fit_decay_rate: non-positive energy in fit window");
    ts.push_back(r.t);
    ys.push_back(std::log(r.total));
  }
  if (ts.size() < 2)
    throw std::domain_error("fit_decay_rate: need at least two records past t_start");
  const double n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
  }
  const double tbar = st / n, ybar = sy / n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tbar) * (ts[i] - tbar);
    sty += (ts[i] - tbar) * (ys[i] - ybar);
  }
  const double slope = sty / stt;
  const double intercept = ybar - slope * tbar;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double fit = intercept + slope * ts[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  DecayFit out;
  out.w = -slope;
  out.K = std::exp(intercept);
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

std::optional<double> detect_blowup(const EnergyTrace& trace, const SimulationConfig& cfg) {
  for (const EnergyRecord& r : trace.records)
    if (r.sup_norm > cfg.blowup_threshold) return r.t;
  if (trace.verdict.kind == VerdictKind::BlewUp) return trace.verdict.t;
  return std::nullopt;
}

}  // namespace plate
