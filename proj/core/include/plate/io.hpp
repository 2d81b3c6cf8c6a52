#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "plate/config.hpp"
#include "plate/observables.hpp"
#include "plate/stability.hpp"
#include "plate/state.hpp"

namespace plate {

/// Full-precision decimal formatting; every written value re-parses to the
/// identical double.
std::string format_full(double v);

/// Flat `key = value` file with '#' comments. Parse failures carry the line
/// number; unknown keys are rejected by validate_config.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

SimulationConfig load_config(const std::filesystem::path& path);

void write_config_echo(const std::filesystem::path& path, const SimulationConfig& cfg);

void write_energy_csv(const std::filesystem::path& path,
                      const std::vector<EnergyRecord>& records);
std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path);

void write_snapshots_csv(const std::filesystem::path& path, const Mesh& mesh,
                         const std::vector<Snapshot>& snapshots);

void write_regime_json(const std::filesystem::path& path, const RegimeReport& report);

void write_table_csv(const std::filesystem::path& path, const std::vector<WellRow>& rows);
std::vector<WellRow> read_table_csv(const std::filesystem::path& path);

}  // namespace plate
