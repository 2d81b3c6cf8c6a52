#pragma once

#include <array>
#include <optional>

#include "plate/banded.hpp"
#include "plate/config.hpp"
#include "plate/delay.hpp"
#include "plate/fem.hpp"
#include "plate/fractional.hpp"
#include "plate/observables.hpp"
#include "plate/state.hpp"

namespace plate {

enum class StepStatus { Ok, NonConvergence, NonFinite };

/// Consistent start: solves M qdd = F(q0) - K q0 - a1 M qd0 - fractional
/// force - a2 M (delayed velocity at t=0) so the motion equation holds at
/// t = 0. Throws ConfigError when the mass factorization fails.
NodalField initial_acceleration(const FemSystem& sys, const SimulationConfig& cfg,
                                const NodalField& q0, const NodalField& qd0,
                                const XiGrid& grid, const DiffusiveField& field,
                                const DelayBuffer& buf);

/// One coupled beam/memory/delay run. Owns the state; the effective Newmark
/// operator is factorized once (dt is fixed for the run) and reused by every
/// fixed-point iteration.
class Simulation {
 public:
  explicit Simulation(const SimulationConfig& cfg, const HistoryFn& history = {});

  StepStatus step();

  const SimulationConfig& config() const { return cfg_; }
  const State& state() const { return state_; }
  const FemSystem& fem() const { return fem_; }
  const XiGrid& grid() const { return grid_; }
  const DiffusiveField& field() const { return field_; }
  const DelayBuffer& delay_buffer() const { return *delay_; }

  EnergyRecord energy() const {
    return discrete_energy(fem_, cfg_, state_, grid_, field_, *delay_);
  }

  int last_iterations() const { return last_iterations_; }
  bool residual_grew() const { return residual_grew_; }
  const std::array<long, 64>& iteration_histogram() const { return iter_histogram_; }
  long median_iterations() const;

 private:
  SimulationConfig cfg_;
  FemSystem fem_;
  XiGrid grid_;
  DiffusiveField field_;
  std::optional<DelayBuffer> delay_;
  State state_;

  double b_ = 0.0;
  double c_augm_ = 0.0;
  std::vector<double> mu_tilde_;
  BandedCholesky effective_;  // M + gamma dt (a1 M + C_augm) + beta dt^2 K

  int last_iterations_ = 0;
  bool residual_grew_ = false;
  std::array<long, 64> iter_histogram_{};

  // scratch buffers reused across steps
  NodalField pred_q_, rhs_fixed_, rhs_, trial_q_, scratch_;
};

struct RunOptions {
  int snapshot_stride = 100;
  HistoryFn history;           // delay history f0; zero when absent
  bool allow_dt_retry = true;  // halve dt and restart once on NonConvergence
};

struct RunResult {
  EnergyTrace trace;
  std::vector<Snapshot> snapshots;
  Verdict verdict;
  RegimeReport regime;
  double dt_used = 0.0;
  int retries = 0;
  double wall_seconds = 0.0;
  long median_iterations = 0;
};

RunResult run_simulation(const SimulationConfig& cfg, const RunOptions& opts = {});

}  // namespace plate
