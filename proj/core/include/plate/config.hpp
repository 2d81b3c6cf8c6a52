#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace plate {

/// Raised for any rejected parameter set or malformed config input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Which definition of the diffusive weight b the run uses.
/// section2: b = sin(theta*pi)/pi. section7: the same scaled by a1.
enum class BConvention { section2, section7 };

struct SimulationConfig {
  double L = 1.0;            // domain length
  double T = 100.0;          // final time
  int N_nodes = 250;         // spatial nodes (2 DOFs each)
  double dt = 1e-3;          // time step
  double theta = 0.5;        // fractional order, in (0,1)
  double vartheta = 0.3;     // tempering, > 0
  double a1 = 5.0;           // frictional damping
  double a2 = 0.4;           // delayed-feedback gain
  double s_delay = 5.0;      // delay, an integer multiple of dt
  double p = 5.0;            // source exponent, > 2
  double lambda = 1.0;       // initial amplitude
  double R_xi = 200.0;       // xi-grid truncation
  int M_xi = 400;            // xi-grid points
  double newmark_beta = 0.25;
  double newmark_gamma = 0.5;
  double nl_tol = 1e-10;     // fixed-point relative tolerance
  int nl_max_iter = 50;
  double blowup_threshold = 1e8;  // sup-norm cutoff
  BConvention b_convention = BConvention::section2;
  bool source_enabled = true;      // power nonlinearity on/off
  bool fractional_enabled = true;  // diffusive damping on/off

  /// Delay steps m = s/dt (validated integer).
  int delay_steps() const;

  /// Diffusive weight per convention; zero when the fractional term is off.
  double b_value() const;
};

/// Validates a raw key/value map, fills defaults, rejects unknown keys and
/// out-of-range values.
SimulationConfig validate_config(const std::map<std::string, std::string>& raw);

/// Re-checks an already-built config (same rules); returns it unchanged when
/// valid, throws otherwise.
const SimulationConfig& validate_config(const SimulationConfig& cfg);

/// a1 > a2 + 2*b*A0 with b per convention and the closed-form A0.
bool check_a1_condition(const SimulationConfig& cfg);

/// vartheta^(1-theta) < a2 (delay-dominated regime).
bool check_a2_condition(const SimulationConfig& cfg);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// (a2/2 + b*A0, a1 - b*A0 - a2/2); empty exactly when the a1 condition fails.
Interval admissible_v_interval(const SimulationConfig& cfg);

enum class Predicted { ExponentialDecay, BlowUp, Indeterminate };

const char* to_string(Predicted p);

struct RegimeReport {
  bool a1_condition_holds = false;
  bool a2_condition_holds = false;
  Interval v_interval;
  double E0 = 0.0;      // closed-form initial energy of the lambda profile
  double d_depth = 0.0; // potential-well depth
  bool eq41_holds = false;
  Predicted predicted = Predicted::Indeterminate;
};

/// Classifies the run against the proven sufficient conditions; anything not
/// covered by them is Indeterminate.
RegimeReport classify_regime(const SimulationConfig& cfg);

std::string to_key_value_text(const SimulationConfig& cfg);

}  // namespace plate
