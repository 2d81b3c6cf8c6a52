#include "plate/stepper.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

namespace plate {

namespace {

bool all_finite(const NodalField& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double max_abs(const NodalField& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// The runs use V0(x) = lambda (x/L)^2 (1 - x/L)^2 with zero velocity.
NodalField initial_profile(const FemSystem& sys, double lambda, double L) {
  return sys.interpolate(
      [=](double x) {
        const double u = x / L;
        return lambda * u * u * (1.0 - u) * (1.0 - u);
      },
      [=](double x) {
        const double u = x / L;
        return lambda * 2.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / L;
      });
}

}  // namespace

NodalField initial_acceleration(const FemSystem& sys, const SimulationConfig& cfg,
                                const NodalField& q0, const NodalField& qd0,
                                const XiGrid& grid, const DiffusiveField& field,
                                const DelayBuffer& buf) {
  const int n = sys.n_free();
  const double b = cfg.b_value();
  NodalField rhs = cfg.source_enabled ? sys.nonlinear_force(q0, cfg.p)
                                      : NodalField(n, 0.0);
  const NodalField kq = sys.stiffness().matvec(q0);
  // velocity-proportional terms share one mass matvec
  NodalField u(n, 0.0);
  for (int i = 0; i < n; ++i) u[i] = cfg.a1 * qd0[i];
  const NodalField& vdel = buf.velocity_at_level(-buf.m());
  for (int i = 0; i < n; ++i) u[i] += cfg.a2 * vdel[i];
  if (b > 0.0) {
    const NodalField gsum = fractional_force(grid, field, 1.0);
    for (int i = 0; i < n; ++i) u[i] += 2.0 * b * gsum[i];
  }
  const NodalField mu = sys.mass().matvec(u);
  for (int i = 0; i < n; ++i) rhs[i] -= kq[i] + mu[i];
  BandedCholesky mass_chol;
  if (!mass_chol.factor(sys.mass()))
    throw ConfigError("initial_acceleration: mass factorization failed");
  mass_chol.solve_in_place(rhs);
  return rhs;
}

Simulation::Simulation(const SimulationConfig& cfg, const HistoryFn& history)
    : cfg_(validate_config(cfg)),
      fem_(FemSystem::assemble(Mesh{cfg.L, cfg.N_nodes})),
      grid_(build_grid(cfg.theta, cfg.R_xi, cfg.M_xi)),
      field_(cfg.M_xi, fem_.n_free()) {
  const int n = fem_.n_free();
  state_.q = initial_profile(fem_, cfg_.lambda, cfg_.L);
  state_.qd.assign(n, 0.0);
  state_.n = 0;
  state_.t = 0.0;

  delay_.emplace(fem_, cfg_.delay_steps(), cfg_.dt, history, state_.qd);
  state_.qdd = initial_acceleration(fem_, cfg_, state_.q, state_.qd, grid_, field_, *delay_);
  delay_->set_initial_acceleration(state_.qdd);

  b_ = cfg_.b_value();
  c_augm_ = c_augm_coeff(grid_, cfg_.vartheta, cfg_.dt, b_);
  mu_tilde_ = mu_tilde(grid_, cfg_.vartheta, cfg_.dt);

  const double dt = cfg_.dt;
  const double cm = 1.0 + cfg_.newmark_gamma * dt * (cfg_.a1 + c_augm_);
  const double ck = cfg_.newmark_beta * dt * dt;
  const BandedSymmetric a_eff =
      BandedSymmetric::linear_combination(cm, fem_.mass(), ck, fem_.stiffness());
  if (!effective_.factor(a_eff))
    throw ConfigError("effective Newmark operator is not positive definite");

  pred_q_.resize(n);
  rhs_fixed_.resize(n);
  rhs_.resize(n);
  trial_q_.resize(n);
  scratch_.resize(n);
}

StepStatus Simulation::step() {
  const int n = fem_.n_free();
  const double dt = cfg_.dt;
  const double beta = cfg_.newmark_beta;
  const double gamma = cfg_.newmark_gamma;
  const NodalField& q = state_.q;
  const NodalField& qd = state_.qd;
  const NodalField& qdd = state_.qdd;

  const NodalField vdel = delay_->delayed_velocity(state_.n);

  for (int i = 0; i < n; ++i)
    pred_q_[i] = q[i] + dt * qd[i] + (0.5 - beta) * dt * dt * qdd[i];

  // rhs_fixed = -K predQ - M [a1 (qd + (1-g)dt qdd) + c_augm (2 qd + (1-g)dt qdd)
  //                           + a2 vdel + 2 b sum mu~_l G_l dxi]
  fem_.stiffness().matvec(pred_q_.data(), rhs_fixed_.data());
  for (int i = 0; i < n; ++i) {
    scratch_[i] = cfg_.a1 * (qd[i] + (1.0 - gamma) * dt * qdd[i]) +
                  c_augm_ * (2.0 * qd[i] + (1.0 - gamma) * dt * qdd[i]) +
                  cfg_.a2 * vdel[i];
  }
  if (b_ > 0.0) {
    const NodalField gsum = weighted_mode_sum(grid_, field_, mu_tilde_, 1.0);
    for (int i = 0; i < n; ++i) scratch_[i] += 2.0 * b_ * gsum[i];
  }
  NodalField mterm(n);
  fem_.mass().matvec(scratch_.data(), mterm.data());
  for (int i = 0; i < n; ++i) rhs_fixed_[i] = -rhs_fixed_[i] - mterm[i];

  // fixed-point loop on the new acceleration, warm-started at qdd^n
  NodalField qdd_new = qdd;
  double first_update = -1.0, update = 0.0;
  bool converged = false;
  int iters = 0;
  for (int it = 0; it < cfg_.nl_max_iter; ++it) {
    ++iters;
    rhs_ = rhs_fixed_;
    if (cfg_.source_enabled) {
      for (int i = 0; i < n; ++i) trial_q_[i] = pred_q_[i] + beta * dt * dt * qdd_new[i];
      NodalField f;
      try {
        f = fem_.nonlinear_force(trial_q_, cfg_.p);
      } catch (const std::domain_error&) {
        return StepStatus::NonFinite;
      }
      for (int i = 0; i < n; ++i) rhs_[i] += f[i];
    }
    effective_.solve_in_place(rhs_);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(rhs_[i] - qdd_new[i]));
    update = diff / std::max(max_abs(rhs_), 1e-300);
    qdd_new = rhs_;
    if (!std::isfinite(update)) return StepStatus::NonFinite;
    if (first_update < 0.0) first_update = update;
    if (update < cfg_.nl_tol) {
      converged = true;
      break;
    }
  }
  last_iterations_ = iters;
  iter_histogram_[std::min<std::size_t>(iters, iter_histogram_.size() - 1)]++;
  if (!converged) {
    residual_grew_ = update > first_update;
    return StepStatus::NonConvergence;
  }

  NodalField q_new(n), qd_new(n);
  for (int i = 0; i < n; ++i) {
    q_new[i] = pred_q_[i] + beta * dt * dt * qdd_new[i];
    qd_new[i] = qd[i] + (1.0 - gamma) * dt * qdd[i] + gamma * dt * qdd_new[i];
  }
  if (!all_finite(q_new) || !all_finite(qd_new)) return StepStatus::NonFinite;

  for (int i = 0; i < n; ++i) scratch_[i] = 0.5 * (qd[i] + qd_new[i]);
  update_aux(grid_, field_, cfg_.vartheta, dt, scratch_);
  delay_->push(qd_new, qdd_new, fem_.mass_norm2(qd_new));

  state_.q = std::move(q_new);
  state_.qd = std::move(qd_new);
  state_.qdd = std::move(qdd_new);
  state_.n += 1;
  state_.t = state_.n * dt;
  return StepStatus::Ok;
}

long Simulation::median_iterations() const {
  long total = 0;
  for (long c : iter_histogram_) total += c;
  if (total == 0) return 0;
  long seen = 0;
  for (std::size_t k = 0; k < iter_histogram_.size(); ++k) {
    seen += iter_histogram_[k];
    if (2 * seen >= total) return static_cast<long>(k);
  }
  return static_cast<long>(iter_histogram_.size() - 1);
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Completed: return "Completed";
    case VerdictKind::BlewUp: return "BlewUpAt";
    case VerdictKind::Failed: return "FailedAt";
  }
  return "FailedAt";
}

namespace {

RunResult run_once(const SimulationConfig& cfg, const RunOptions& opts,
                   bool* nonconvergence) {
  RunResult out;
  out.dt_used = cfg.dt;
  out.regime = classify_regime(cfg);
  Simulation sim(cfg, opts.history);

  const long n_steps = static_cast<long>(std::floor(cfg.T / cfg.dt + 1e-9));
  out.trace.records.reserve(n_steps + 1);
  out.trace.records.push_back(sim.energy());
  auto snapshot_now = [&]() {
    out.snapshots.push_back({sim.state().t, sim.fem().nodal_values(sim.state().q)});
  };
  snapshot_now();

  Verdict verdict{VerdictKind::Completed, 0.0, ""};
  for (long nstep = 0; nstep < n_steps; ++nstep) {
    const StepStatus status = sim.step();
    const double t_now = (nstep + 1) * cfg.dt;
    if (status == StepStatus::NonFinite) {
      verdict = {VerdictKind::BlewUp, t_now, "non-finite state"};
      break;
    }
    if (status == StepStatus::NonConvergence) {
      if (nonconvergence) *nonconvergence = true;
      verdict = sim.residual_grew()
                    ? Verdict{VerdictKind::BlewUp, t_now, "fixed-point divergence"}
                    : Verdict{VerdictKind::Failed, t_now, "fixed-point stagnation"};
      break;
    }
    out.trace.records.push_back(sim.energy());
    if (out.trace.records.back().sup_norm > cfg.blowup_threshold) {
      verdict = {VerdictKind::BlewUp, t_now, "sup-norm escape"};
      snapshot_now();
      break;
    }
    if (opts.snapshot_stride > 0 && (nstep + 1) % opts.snapshot_stride == 0) snapshot_now();
  }
  // always keep the final computed profile
  if (out.snapshots.empty() || out.snapshots.back().t != sim.state().t) snapshot_now();

  out.verdict = verdict;
  out.trace.verdict = verdict;
  out.median_iterations = sim.median_iterations();
  if (verdict.completed()) {
    try {
      out.trace.fit = fit_decay_rate(out.trace.records, 2.0 * cfg.s_delay);
    } catch (const std::domain_error&) {
      out.trace.fit = std::nullopt;  // energy not positive over the window
    }
  }
  return out;
}

}  // namespace

RunResult run_simulation(const SimulationConfig& cfg, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  bool nonconvergence = false;
  RunResult result = run_once(cfg, opts, &nonconvergence);
  if (nonconvergence && opts.allow_dt_retry) {
    // one dt/2 retry before accepting the failure as physical
    SimulationConfig half = cfg;
    half.dt = 0.5 * cfg.dt;
    bool again = false;
    RunResult retry = run_once(half, opts, &again);
    retry.retries = 1;
    if (again && retry.verdict.kind == VerdictKind::Failed)
      retry.verdict.kind = VerdictKind::BlewUp;  // persistent breakdown
    retry.trace.verdict = retry.verdict;
    result = std::move(retry);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace plate
