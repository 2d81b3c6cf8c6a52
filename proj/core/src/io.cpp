#include "plate/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace plate {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::map<std::string, std::string> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": empty key or value");
    if (raw.count(key))
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    raw[key] = value;
  }
  return raw;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  return validate_config(parse_config_file(path));
}

void write_config_echo(const std::filesystem::path& path, const SimulationConfig& cfg) {
  std::ofstream out = open_out(path);
  out << to_key_value_text(cfg);
}

void write_energy_csv(const std::filesystem::path& path,
                      const std::vector<EnergyRecord>& records) {
  std::ofstream out = open_out(path);
  out << "t,kinetic,elastic,fractional,delay,potential,total,sup_norm\n";
  for (const EnergyRecord& r : records) {
    out << format_full(r.t) << ',' << format_full(r.kinetic) << ','
        << format_full(r.elastic) << ',' << format_full(r.fractional) << ','
        << format_full(r.delay) << ',' << format_full(r.potential) << ','
        << format_full(r.total) << ',' << format_full(r.sup_norm) << '\n';
  }
}

std::vector<EnergyRecord> read_energy_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) ||
      line != "t,kinetic,elastic,fractional,delay,potential,total,sup_norm")
    throw std::runtime_error(path.string() + ": bad energy.csv header");
  std::vector<EnergyRecord> records;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 8)
      throw std::runtime_error(path.string() + ": bad energy.csv row '" + line + "'");
    EnergyRecord r;
    r.t = std::stod(cells[0]);
    r.kinetic = std::stod(cells[1]);
    r.elastic = std::stod(cells[2]);
    r.fractional = std::stod(cells[3]);
    r.delay = std::stod(cells[4]);
    r.potential = std::stod(cells[5]);
    r.total = std::stod(cells[6]);
    r.sup_norm = std::stod(cells[7]);
    records.push_back(r);
  }
  return records;
}

void write_snapshots_csv(const std::filesystem::path& path, const Mesh& mesh,
                         const std::vector<Snapshot>& snapshots) {
  std::ofstream out = open_out(path);
  out << "t,x,value\n";
  for (const Snapshot& s : snapshots)
    for (std::size_t i = 0; i < s.values.size(); ++i)
      out << format_full(s.t) << ',' << format_full(mesh.node(static_cast<int>(i)))
          << ',' << format_full(s.values[i]) << '\n';
}

void write_regime_json(const std::filesystem::path& path, const RegimeReport& report) {
  nlohmann::json j;
  j["a1_condition_holds"] = report.a1_condition_holds;
  j["a2_condition_holds"] = report.a2_condition_holds;
  j["v_interval_empty"] = report.v_interval.empty();
  j["v_interval_lo"] = report.v_interval.lo;
  j["v_interval_hi"] = report.v_interval.hi;
  j["E0"] = report.E0;
  j["d_depth"] = report.d_depth;
  j["eq41_holds"] = report.eq41_holds;
  j["predicted"] = to_string(report.predicted);
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_table_csv(const std::filesystem::path& path, const std::vector<WellRow>& rows) {
  std::ofstream out = open_out(path);
  out << "p,lambda_c,d,lambda_d\n";
  for (const WellRow& r : rows)
    out << format_full(r.p) << ',' << format_full(r.lambda_c) << ','
        << format_full(r.d) << ',' << format_full(r.lambda_d) << '\n';
}

std::vector<WellRow> read_table_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "p,lambda_c,d,lambda_d")
    throw std::runtime_error(path.string() + ": bad table header");
  std::vector<WellRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4)
      throw std::runtime_error(path.string() + ": bad table row '" + line + "'");
    rows.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2]),
                    std::stod(cells[3])});
  }
  return rows;
}

}  // namespace plate
