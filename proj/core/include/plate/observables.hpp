#pragma once

#include <optional>
#include <vector>

#include "plate/config.hpp"
#include "plate/delay.hpp"
#include "plate/fem.hpp"
#include "plate/fractional.hpp"
#include "plate/state.hpp"

namespace plate {

/// One row of the discrete energy
///   E = 1/2 qd'M qd + 1/2 q'K q + (b/2) sum mu_l ||G_l||_M^2 dxi
///       + (a2/2) sum_{j=n-m}^{n-1} ||qd^j||_M^2 - (1/p) int |V_h|^p dx.
/// Mode norms carry the mass matrix (the discrete L2 norm of the field).
struct EnergyRecord {
  double t = 0.0;
  double kinetic = 0.0;
  double elastic = 0.0;
  double fractional = 0.0;
  double delay = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double sup_norm = 0.0;
};

struct DecayFit {
  double w = 0.0;         // rate: E ~ K exp(-w t)
  double K = 0.0;
  double r_squared = 0.0;
};

struct EnergyTrace {
  std::vector<EnergyRecord> records;
  Verdict verdict;
  std::optional<DecayFit> fit;
};

EnergyRecord discrete_energy(const FemSystem& sys, const SimulationConfig& cfg,
                             const State& state, const XiGrid& grid,
                             const DiffusiveField& field, const DelayBuffer& buf);

/// Mesh-independent initial energy of the lambda profile by adaptive
/// quadrature: 1/2 ||V0''||^2 - (1/p) ||V0||_p^p.
double continuous_E0(const SimulationConfig& cfg);

struct Functionals {
  double I = 0.0;
  double J = 0.0;
};

/// The modified-energy functionals; the delay integral reuses the energy's
/// norm window as dt/s * running_sum. v defaults to the midpoint of the
/// admissible interval and must be supplied when that interval is empty.
Functionals functionals_IJ(const FemSystem& sys, const SimulationConfig& cfg,
                           const State& state, const XiGrid& grid,
                           const DiffusiveField& field, const DelayBuffer& buf,
                           std::optional<double> v_weight = std::nullopt);

/// Least-squares line on (t, ln E) for t >= t_start. Throws std::domain_error
/// when the window contains non-positive energies or fewer than two points.
DecayFit fit_decay_rate(const std::vector<EnergyRecord>& records, double t_start);

/// First time the sup-norm escapes the cutoff or the stepper gave up;
/// nullopt for a clean trace.
std::optional<double> detect_blowup(const EnergyTrace& trace, const SimulationConfig& cfg);

}  // namespace plate
