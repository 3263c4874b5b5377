#pragma once
// Line-based "key = value" run configuration.  '#' starts a comment.  All
// frequencies are technical MHz; drive strengths may be given either as Rabi
// frequencies or as powers in mW (converted through the calibration), but
// not both.  Unknown and duplicate keys are rejected with line numbers.

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>

#include "yblaser/sweep.hpp"

namespace yblaser {

struct RunConfig {
  OperatingPoint op;
  PowerCalibration calib;
  SimConfig sim;
  double x_min = -4.0, x_max = 8.0;
  int nx = 60;
  double y_min = -40.0, y_max = -20.0;
  int ny = 60;
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& v, int line_no) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw config_error("line " + std::to_string(line_no) + ": malformed number '" + v + "'");
  return x;
}

inline long long parse_int(const std::string& v, int line_no) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw config_error("line " + std::to_string(line_no) + ": malformed integer '" + v + "'");
  return x;
}

inline bool parse_bool(const std::string& v, int line_no) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw config_error("line " + std::to_string(line_no) + ": malformed boolean '" + v + "'");
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::optional<double> omega_mot, p_mot, omega_pump, p_pump;
  std::map<std::string, int> seen;  // key -> first line

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    if (const auto it = seen.find(key); it != seen.end())
      throw config_error("line " + std::to_string(line_no) + ": duplicate key '" + key +
                         "' (first given at line " + std::to_string(it->second) + ")");
    seen[key] = line_no;

    const auto num = [&] { return detail::parse_double(val, line_no); };
    const auto integer = [&] { return detail::parse_int(val, line_no); };

    if (key == "gamma_b_mhz") cfg.op.atom.gamma_b = num();
    else if (key == "gamma_g_mhz") cfg.op.atom.gamma_g = num();
    else if (key == "lambda_b_nm") cfg.op.atom.lambda_b = num();
    else if (key == "lambda_g_nm") cfg.op.atom.lambda_g = num();
    else if (key == "kappa_mhz") cfg.op.cavity.kappa = num();
    else if (key == "g0_mhz") cfg.op.cavity.g0 = num();
    else if (key == "cavity_length_m") cfg.op.cavity.length_m = num();
    else if (key == "t_mirror") cfg.op.cavity.t_mirror = num();
    else if (key == "n_atoms") cfg.op.cavity.n_atoms = num();
    else if (key == "delta_mot_mhz") cfg.op.delta_mot = num();
    else if (key == "delta_pump_mhz") cfg.op.delta_pump = num();
    else if (key == "delta_cavity_mhz") cfg.op.delta_cavity = num();
    else if (key == "omega_mot_mhz") {
      if (p_mot) throw config_error("line " + std::to_string(line_no) +
                                    ": both omega_mot_mhz and p_mot_mw given");
      omega_mot = num();
    } else if (key == "p_mot_mw") {
      if (omega_mot) throw config_error("line " + std::to_string(line_no) +
                                        ": both omega_mot_mhz and p_mot_mw given");
      p_mot = num();
    } else if (key == "omega_pump_mhz") {
      if (p_pump) throw config_error("line " + std::to_string(line_no) +
                                     ": both omega_pump_mhz and p_pump_mw given");
      omega_pump = num();
    } else if (key == "p_pump_mw") {
      if (omega_pump) throw config_error("line " + std::to_string(line_no) +
                                         ": both omega_pump_mhz and p_pump_mw given");
      p_pump = num();
    } else if (key == "k_pump_mhz_per_sqrt_mw") cfg.calib.k_pump = num();
    else if (key == "k_mot_mhz_per_sqrt_mw") cfg.calib.k_mot = num();
    else if (key == "dt_us") cfg.sim.dt = num();
    else if (key == "t_transient_us") cfg.sim.t_transient = num();
    else if (key == "t_window_us") cfg.sim.t_window = num();
    else if (key == "sample_stride") cfg.sim.sample_stride = static_cast<int>(integer());
    else if (key == "seed_amp") cfg.sim.seed_amp = num();
    else if (key == "rng_seed") cfg.sim.rng_seed = static_cast<std::uint64_t>(integer());
    else if (key == "coherent_pump") cfg.sim.coherent_pump = detail::parse_bool(val, line_no);
    else if (key == "x_min_mhz") cfg.x_min = num();
    else if (key == "x_max_mhz") cfg.x_max = num();
    else if (key == "nx") cfg.nx = static_cast<int>(integer());
    else if (key == "y_min_mhz") cfg.y_min = num();
    else if (key == "y_max_mhz") cfg.y_max = num();
    else if (key == "ny") cfg.ny = static_cast<int>(integer());
    else
      throw config_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }

  cfg.calib.validate();
  if (p_mot) cfg.op.omega_mot = rabi_from_power(*p_mot, cfg.calib.k_mot);
  else if (omega_mot) cfg.op.omega_mot = *omega_mot;
  if (p_pump) cfg.op.omega_pump = rabi_from_power(*p_pump, cfg.calib.k_pump);
  else if (omega_pump) cfg.op.omega_pump = *omega_pump;

  cfg.op.validate();
  cfg.sim.validate();
  if (cfg.nx < 2 || cfg.ny < 2)
    throw config_error("nx and ny must be >= 2");
  if (!(cfg.x_min < cfg.x_max) || !(cfg.y_min < cfg.y_max))
    throw config_error("grid extents must satisfy min < max");
  return cfg;
}

// Canonical text form; parse_config(render_config(c)) reproduces c.
inline std::string render_config(const RunConfig& cfg) {
  using detail::fmt_g17;
  std::string s;
  const auto kv = [&s](const char* k, const std::string& v) {
    s += k;
    s += " = ";
    s += v;
    s += "\n";
  };
  kv("gamma_b_mhz", fmt_g17(cfg.op.atom.gamma_b));
  kv("gamma_g_mhz", fmt_g17(cfg.op.atom.gamma_g));
  kv("lambda_b_nm", fmt_g17(cfg.op.atom.lambda_b));
  kv("lambda_g_nm", fmt_g17(cfg.op.atom.lambda_g));
  kv("kappa_mhz", fmt_g17(cfg.op.cavity.kappa));
  kv("g0_mhz", fmt_g17(cfg.op.cavity.g0));
  kv("cavity_length_m", fmt_g17(cfg.op.cavity.length_m));
  kv("t_mirror", fmt_g17(cfg.op.cavity.t_mirror));
  kv("n_atoms", fmt_g17(cfg.op.cavity.n_atoms));
  kv("delta_mot_mhz", fmt_g17(cfg.op.delta_mot));
  kv("delta_pump_mhz", fmt_g17(cfg.op.delta_pump));
  kv("delta_cavity_mhz", fmt_g17(cfg.op.delta_cavity));
  kv("omega_mot_mhz", fmt_g17(cfg.op.omega_mot));
  kv("omega_pump_mhz", fmt_g17(cfg.op.omega_pump));
  kv("k_pump_mhz_per_sqrt_mw", fmt_g17(cfg.calib.k_pump));
  kv("k_mot_mhz_per_sqrt_mw", fmt_g17(cfg.calib.k_mot));
  kv("dt_us", fmt_g17(cfg.sim.dt));
  kv("t_transient_us", fmt_g17(cfg.sim.t_transient));
  kv("t_window_us", fmt_g17(cfg.sim.t_window));
  kv("sample_stride", std::to_string(cfg.sim.sample_stride));
  kv("seed_amp", fmt_g17(cfg.sim.seed_amp));
  kv("rng_seed", std::to_string(cfg.sim.rng_seed));
  kv("coherent_pump", cfg.sim.coherent_pump ? "true" : "false");
  kv("x_min_mhz", fmt_g17(cfg.x_min));
  kv("x_max_mhz", fmt_g17(cfg.x_max));
  kv("nx", std::to_string(cfg.nx));
  kv("y_min_mhz", fmt_g17(cfg.y_min));
  kv("y_max_mhz", fmt_g17(cfg.y_max));
  kv("ny", std::to_string(cfg.ny));
  return s;
}

inline GridSpec make_grid(const RunConfig& cfg, MapTask task) {
  GridSpec g;
  g.x_min = cfg.x_min;
  g.x_max = cfg.x_max;
  g.nx = cfg.nx;
  g.y_min = cfg.y_min;
  g.y_max = cfg.y_max;
  g.ny = cfg.ny;
  g.base = cfg.op;
  g.task = task;
  return g;
}

}  // namespace yblaser
