#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "plate/config.hpp"
#include "plate/stepper.hpp"

namespace plate {

struct SweepParam {
  std::string name;   // config key to vary
  double start = 0.0;
  double step = 0.0;
  double stop = 0.0;

  std::vector<double> values() const;
};

/// "lambda 0.5:0.5:250; a2 0:0.1:3" -> one or two varied parameters.
std::vector<SweepParam> parse_sweep_spec(const std::string& spec);

/// Returns a copy of cfg with the named numeric field replaced.
SimulationConfig apply_param(const SimulationConfig& cfg, const std::string& name,
                             double value);

struct SweepRow {
  std::vector<double> values;  // one per varied parameter
  Verdict verdict;
  double E0 = 0.0;             // closed-form initial energy
  double w = 0.0;              // fitted decay rate, NaN when unavailable
  double t_star = 0.0;         // blow-up time, NaN when none
};

/// Runs the Cartesian grid with at most `workers` concurrent simulations.
/// Row order is the deterministic row-major order of the grid, independent
/// of scheduling.
std::vector<SweepRow> run_sweep(const SimulationConfig& base,
                                const std::vector<SweepParam>& params, int workers);

void write_map_csv(const std::filesystem::path& path,
                   const std::vector<SweepParam>& params,
                   const std::vector<SweepRow>& rows);

}  // namespace plate
