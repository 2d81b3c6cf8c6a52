#include "plate/config.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "plate/fractional.hpp"
#include "plate/stability.hpp"

namespace plate {

int SimulationConfig::delay_steps() const {
  const double ratio = s_delay / dt;
  const long long m = std::llround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
    throw ConfigError("delay not a multiple of dt (s/dt = " + std::to_string(ratio) + ")");
  return static_cast<int>(m);
}

double SimulationConfig::b_value() const {
  if (!fractional_enabled) return 0.0;
  const double b = std::sin(theta * M_PI) / M_PI;
  return b_convention == BConvention::section7 ? b * a1 : b;
}

namespace {

double parse_double(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size())
    throw ConfigError("key '" + key + "': trailing characters in '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  const long long i = std::llround(v);
  if (std::abs(v - static_cast<double>(i)) > 1e-12)
    throw ConfigError("key '" + key + "': expected an integer, got '" + text + "'");
  return static_cast<int>(i);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + text + "'");
}

void check_ranges(const SimulationConfig& c) {
  if (!(c.L > 0.0)) throw ConfigError("L must be positive");
  if (!(c.T > 0.0)) throw ConfigError("T must be positive");
  if (c.N_nodes < 3) throw ConfigError("N_nodes must be at least 3");
  if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.theta > 0.0 && c.theta < 1.0)) throw ConfigError("fractional order out of range (theta must lie in (0,1))");
  if (!(c.vartheta > 0.0)) throw ConfigError("vartheta must be positive");
  if (c.a1 < 0.0) throw ConfigError("a1 must be nonnegative");
  if (c.a2 < 0.0) throw ConfigError("a2 must be nonnegative");
  if (!(c.s_delay > 0.0)) throw ConfigError("s_delay must be positive");
  if (!(c.p > 2.0)) throw ConfigError("p must exceed 2");
  if (c.lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  if (!(c.R_xi > 0.0)) throw ConfigError("R_xi must be positive");
  if (c.M_xi < 1) throw ConfigError("M_xi must be at least 1");
  if (!(c.newmark_beta >= 0.0 && c.newmark_beta <= 0.5))
    throw ConfigError("newmark_beta must lie in [0, 1/2]");
  if (!(c.newmark_gamma >= 0.0 && c.newmark_gamma <= 1.0))
    throw ConfigError("newmark_gamma must lie in [0, 1]");
  if (!(c.nl_tol > 0.0)) throw ConfigError("nl_tol must be positive");
  if (c.nl_max_iter < 1) throw ConfigError("nl_max_iter must be at least 1");
  if (!(c.blowup_threshold > 0.0)) throw ConfigError("blowup_threshold must be positive");
  c.delay_steps();  // throws when s/dt is not an integer
}

}  // namespace

SimulationConfig validate_config(const std::map<std::string, std::string>& raw) {
  SimulationConfig c;
  std::set<std::string> seen;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = raw.find(key);
    if (it == raw.end()) return nullptr;
    seen.insert(key);
    return &it->second;
  };
  if (const auto* v = take("L")) c.L = parse_double("L", *v);
  if (const auto* v = take("T")) c.T = parse_double("T", *v);
  if (const auto* v = take("N_nodes")) c.N_nodes = parse_int("N_nodes", *v);
  if (const auto* v = take("dt")) c.dt = parse_double("dt", *v);
  if (const auto* v = take("theta")) c.theta = parse_double("theta", *v);
  if (const auto* v = take("vartheta")) c.vartheta = parse_double("vartheta", *v);
  if (const auto* v = take("a1")) c.a1 = parse_double("a1", *v);
  if (const auto* v = take("a2")) c.a2 = parse_double("a2", *v);
  if (const auto* v = take("s_delay")) c.s_delay = parse_double("s_delay", *v);
  if (const auto* v = take("p")) c.p = parse_double("p", *v);
  if (const auto* v = take("lambda")) c.lambda = parse_double("lambda", *v);
  if (const auto* v = take("R_xi")) c.R_xi = parse_double("R_xi", *v);
  if (const auto* v = take("M_xi")) c.M_xi = parse_int("M_xi", *v);
  if (const auto* v = take("newmark_beta")) c.newmark_beta = parse_double("newmark_beta", *v);
  if (const auto* v = take("newmark_gamma")) c.newmark_gamma = parse_double("newmark_gamma", *v);
  if (const auto* v = take("nl_tol")) c.nl_tol = parse_double("nl_tol", *v);
  if (const auto* v = take("nl_max_iter")) c.nl_max_iter = parse_int("nl_max_iter", *v);
  if (const auto* v = take("blowup_threshold")) c.blowup_threshold = parse_double("blowup_threshold", *v);
  if (const auto* v = take("b_convention")) {
    if (*v == "section2")
      c.b_convention = BConvention::section2;
    else if (*v == "section7")
      c.b_convention = BConvention::section7;
    else
      throw ConfigError("b_convention must be 'section2' or 'section7', got '" + *v + "'");
  }
  if (const auto* v = take("source_enabled")) c.source_enabled = parse_bool("source_enabled", *v);
  if (const auto* v = take("fractional_enabled"))
    c.fractional_enabled = parse_bool("fractional_enabled", *v);

  for (const auto& [key, value] : raw) {
    (void)value;
    if (!seen.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  check_ranges(c);
  return c;
}

const SimulationConfig& validate_config(const SimulationConfig& cfg) {
  check_ranges(cfg);
  return cfg;
}

bool check_a1_condition(const SimulationConfig& cfg) {
  const double ba0 = cfg.b_value() * analytic_A0(cfg.theta, cfg.vartheta);
  return cfg.a1 > cfg.a2 + 2.0 * ba0;
}

bool check_a2_condition(const SimulationConfig& cfg) {
  return std::pow(cfg.vartheta, 1.0 - cfg.theta) < cfg.a2;
}

Interval admissible_v_interval(const SimulationConfig& cfg) {
  const double ba0 = cfg.b_value() * analytic_A0(cfg.theta, cfg.vartheta);
  return {cfg.a2 / 2.0 + ba0, cfg.a1 - ba0 - cfg.a2 / 2.0};
}

const char* to_string(Predicted p) {
  switch (p) {
    case Predicted::ExponentialDecay: return "ExponentialDecay";
    case Predicted::BlowUp: return "BlowUp";
    case Predicted::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

RegimeReport classify_regime(const SimulationConfig& cfg) {
  RegimeReport r;
  r.a1_condition_holds = check_a1_condition(cfg);
  r.a2_condition_holds = check_a2_condition(cfg);
  r.v_interval = admissible_v_interval(cfg);
  r.E0 = closed_form::initial_energy(cfg.lambda, cfg.p, cfg.L);
  r.d_depth = well_depth(cfg.p, cfg.L);
  r.eq41_holds = check_eq41(cfg, r.E0);
  if (r.a1_condition_holds && r.E0 > 0.0 && r.eq41_holds)
    r.predicted = Predicted::ExponentialDecay;
  else if (r.E0 < 0.0 && r.a2_condition_holds)
    r.predicted = Predicted::BlowUp;
  else
    r.predicted = Predicted::Indeterminate;
  return r;
}

std::string to_key_value_text(const SimulationConfig& cfg) {
  std::ostringstream out;
  char buf[64];
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << key << " = " << buf << "\n";
  };
  put("L", cfg.L);
  put("T", cfg.T);
  out << "N_nodes = " << cfg.N_nodes << "\n";
  put("dt", cfg.dt);
  put("theta", cfg.theta);
  put("vartheta", cfg.vartheta);
  put("a1", cfg.a1);
  put("a2", cfg.a2);
  put("s_delay", cfg.s_delay);
  put("p", cfg.p);
  put("lambda", cfg.lambda);
  put("R_xi", cfg.R_xi);
  out << "M_xi = " << cfg.M_xi << "\n";
  put("newmark_beta", cfg.newmark_beta);
  put("newmark_gamma", cfg.newmark_gamma);
  put("nl_tol", cfg.nl_tol);
  out << "nl_max_iter = " << cfg.nl_max_iter << "\n";
  put("blowup_threshold", cfg.blowup_threshold);
  out << "b_convention = "
      << (cfg.b_convention == BConvention::section7 ? "section7" : "section2") << "\n";
  out << "source_enabled = " << (cfg.source_enabled ? "true" : "false") << "\n";
  out << "fractional_enabled = " << (cfg.fractional_enabled ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace plate
