#pragma once
// Map and curve export.  CSV layout: first row is an empty cell followed by
// the x-axis values; each following row is the y value followed by the row
// data.  NaN renders as an empty field.  Doubles print with 17 significant
// digits so a re-import reproduces finite values bit-exactly.  Metadata goes
// to a JSON-lines sidecar, one object per record.

#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "yblaser/contour.hpp"
#include "yblaser/sweep.hpp"

namespace yblaser {

namespace detail {

inline std::string csv_field(double v) {
  return std::isnan(v) ? std::string() : fmt_g17(v);
}

}  // namespace detail

inline void write_map_csv(const Map2D& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  const GridSpec& g = map.grid;
  for (int ix = 0; ix < g.nx; ++ix) out << "," << detail::fmt_g17(g.x(ix));
  out << "\n";
  for (int iy = 0; iy < g.ny; ++iy) {
    out << detail::fmt_g17(g.y(iy));
    for (int ix = 0; ix < g.nx; ++ix) out << "," << detail::csv_field(map.at(ix, iy));
    out << "\n";
  }
  if (!out) throw config_error("short write to '" + path + "'");
}

struct CsvMap {
  std::vector<double> xs, ys;
  std::vector<double> values;  // [iy * xs.size() + ix]
};

inline CsvMap read_map_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read '" + path + "'");
  CsvMap m;
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> f;
    size_t b = 0;
    for (;;) {
      const size_t c = s.find(',', b);
      f.push_back(s.substr(b, c == std::string::npos ? std::string::npos : c - b));
      if (c == std::string::npos) return f;
      b = c + 1;
    }
  };
  const auto field = [](const std::string& f) {
    return f.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : std::strtod(f.c_str(), nullptr);
  };
  if (!std::getline(in, line)) throw config_error("'" + path + "': empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto head = split(line);
  for (size_t k = 1; k < head.size(); ++k) m.xs.push_back(field(head[k]));
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto row = split(line);
    if (row.size() != head.size())
      throw config_error("'" + path + "': ragged row");
    m.ys.push_back(field(row[0]));
    for (size_t k = 1; k < row.size(); ++k) m.values.push_back(field(row[k]));
  }
  return m;
}

namespace detail {

inline nlohmann::json op_json(const OperatingPoint& op) {
  return {{"delta_mot_mhz", op.delta_mot},
          {"delta_pump_mhz", op.delta_pump},
          {"delta_cavity_mhz", op.delta_cavity},
          {"omega_mot_mhz", op.omega_mot},
          {"omega_pump_mhz", op.omega_pump},
          {"gamma_b_mhz", op.atom.gamma_b},
          {"gamma_g_mhz", op.atom.gamma_g},
          {"lambda_b_nm", op.atom.lambda_b},
          {"lambda_g_nm", op.atom.lambda_g},
          {"kappa_mhz", op.cavity.kappa},
          {"g0_mhz", op.cavity.g0},
          {"cavity_length_m", op.cavity.length_m},
          {"t_mirror", op.cavity.t_mirror},
          {"n_atoms", op.cavity.n_atoms}};
}

inline nlohmann::json sim_json(const SimConfig& sim) {
  return {{"dt_us", sim.dt},
          {"t_transient_us", sim.t_transient},
          {"t_window_us", sim.t_window},
          {"sample_stride", sim.sample_stride},
          {"seed_amp", sim.seed_amp},
          {"rng_seed", sim.rng_seed},
          {"coherent_pump", sim.coherent_pump}};
}

}  // namespace detail

inline void write_meta_jsonl(const Map2D& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  nlohmann::json head{
      {"kind", "map"},
      {"task", to_string(map.grid.task)},
      {"grid",
       {{"x_min_mhz", map.grid.x_min},
        {"x_max_mhz", map.grid.x_max},
        {"nx", map.grid.nx},
        {"y_min_mhz", map.grid.y_min},
        {"y_max_mhz", map.grid.y_max},
        {"ny", map.grid.ny}}},
      {"operating_point", detail::op_json(map.grid.base)},
      {"sim", detail::sim_json(map.sim)},
      {"version", map.version},
      {"workers", map.workers},
      {"elapsed_s", map.elapsed_s},
      {"cell_errors", map.errors.size()}};
  if (map.grid.task == MapTask::frequency && map.sim.coherent_pump)
    head["experimental"] = "coherent_pump";
  out << head.dump() << "\n";
  for (const CellError& e : map.errors) {
    const nlohmann::json rec{
        {"kind", "cell_error"}, {"ix", e.ix}, {"iy", e.iy}, {"what", e.what}};
    out << rec.dump() << "\n";
  }
}

// Write the pair of map artifacts: <base>.csv and <base>.meta.jsonl.
inline void export_map(const Map2D& map, const std::string& base_path) {
  write_map_csv(map, base_path + ".csv");
  write_meta_jsonl(map, base_path + ".meta.jsonl");
}

// Generic column-oriented curve export (one header row, then data rows).
inline void write_curve_csv(const std::string& path,
                            const std::vector<std::string>& columns,
                            const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  for (size_t k = 0; k < columns.size(); ++k)
    out << (k ? "," : "") << columns[k];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << detail::csv_field(row[k]);
    out << "\n";
  }
}

}  // namespace yblaser
