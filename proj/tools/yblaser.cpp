// Command-line front end: derived parameters, pump-rate scans, single steady
// states and gain evaluations, threshold / frequency maps, and the output
// power curve.  Exit codes: 0 success, 2 configuration error, 3 numerical
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yblaser/yblaser.hpp"

namespace {

using namespace yblaser;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return parse_config("");
  return parse_config(slurp(path));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << text;
}

void cmd_params(const RunConfig& cfg) {
  const DerivedParams p = derived_params(cfg.op.cavity, cfg.op.atom);
  std::printf("c1 = %.6g\n", p.c1);
  std::printf("omega_cavity_collective_mhz = %.6g\n", p.omega_cavity_collective);
  std::printf("round_trip_s = %.6g\n", p.round_trip_s);
  std::printf("watts_per_photon = %.6g\n", p.watts_per_photon);
}

void cmd_pump_rate(const RunConfig& cfg, const std::string& out_base) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < cfg.nx; ++i) {
    const double dp = cfg.x_min + (cfg.x_max - cfg.x_min) * i / (cfg.nx - 1);
    OperatingPoint op = cfg.op;
    op.delta_pump = dp;
    rows.push_back({dp, tech(pump_rate(op)), tech(pump_rate_dressed_estimate(op, dp))});
  }
  const std::string path = out_base + ".csv";
  write_curve_csv(path, {"delta_pump_mhz", "pump_rate_mhz", "dressed_estimate_mhz"}, rows);
  std::printf("wrote %s (%d points)\n", path.c_str(), cfg.nx);
}

void cmd_steady(const RunConfig& cfg) {
  const double w = pump_rate(cfg.op);
  FrameSpec fr;
  fr.delta_green = cfg.op.delta_cavity;
  const DensityMatrix rho = steady_state(build_generator(cfg.op, fr, w));
  std::printf("pump_rate_mhz = %.6g\n", tech(w));
  const char* names = "gbe";
  for (int i = 0; i < 3; ++i)
    std::printf("rho_%c%c = %.8g\n", names[i], names[i], rho(i, i).real());
  const auto coh = [&](int i, int j) {
    std::printf("rho_%c%c = %.8g %+.8gi\n", names[i], names[j], rho(i, j).real(),
                rho(i, j).imag());
  };
  coh(lvl_g, lvl_b);
  coh(lvl_g, lvl_e);
  coh(lvl_b, lvl_e);
}

void cmd_gain(const RunConfig& cfg) {
  const GainResult g = small_signal_gain(cfg.op);
  std::printf("gain_mhz = %.6g\n", tech(g.gain));
  std::printf("kappa_mhz = %.6g\n", tech(g.kappa));
  std::printf("margin_mhz = %.6g\n", tech(g.margin));
  std::printf("test_amp = %.6g\n", g.test_amp);
  std::printf("converged = %s\n", g.converged ? "true" : "false");
  std::printf("lasing = %s\n", g.margin > 0 ? "true" : "false");
}

void export_map_files(const Map2D& map, const std::string& out_base, bool svg) {
  export_map(map, out_base);
  std::printf("wrote %s.csv and %s.meta.jsonl (%.1f s, %zu cell errors)\n",
              out_base.c_str(), out_base.c_str(), map.elapsed_s, map.errors.size());
  if (svg) {
    HeatmapStyle style;
    style.title = std::string(to_string(map.grid.task)) + " map";
    std::vector<Polyline> contours;
    const std::vector<Polyline>* overlay = nullptr;
    if (map.grid.task == MapTask::threshold) {
      contours = extract_contour(map, 0.0);
      overlay = &contours;
    }
    write_text(out_base + ".svg", render_heatmap(map, style, overlay));
    std::printf("wrote %s.svg\n", out_base.c_str());
  }
}

void cmd_map(const RunConfig& cfg, MapTask task, const std::string& out_base,
             int workers, const std::string& resume, bool svg) {
  const Map2D map = run_map(make_grid(cfg, task), cfg.sim, workers, resume);
  export_map_files(map, out_base, svg);
}

void cmd_power_curve(const RunConfig& cfg, const std::string& out_base,
                     double p_min, double p_max, int n) {
  if (n < 2 || !(p_min >= 0.0) || !(p_max > p_min))
    throw config_error("power-curve: need 0 <= pmin < pmax and n >= 2");
  const DerivedParams dp = derived_params(cfg.op.cavity, cfg.op.atom);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    const double p = p_min + (p_max - p_min) * i / (n - 1);
    OperatingPoint op = cfg.op;
    op.omega_pump = rabi_from_power(p, cfg.calib.k_pump);
    const double photons = saturated_photon_number(op);
    rows.push_back({p, photons, photons * dp.watts_per_photon});
  }
  const std::string path = out_base + ".csv";
  write_curve_csv(path, {"p_pump_mw", "photons", "output_w"}, rows);
  std::printf("wrote %s (%d points)\n", path.c_str(), n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassical cold-ytterbium cavity laser simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_base = "out", resume_path;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  bool svg = false;
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_base, "output base path");
  app.add_option("--workers", workers, "parallel workers for maps");
  app.add_option("--resume", resume_path, "checkpoint file to append/resume");
  app.add_flag("--svg", svg, "also render an SVG heatmap");

  auto* sc_params = app.add_subcommand("params", "print derived cavity/atom parameters");
  auto* sc_pump = app.add_subcommand("pump-rate", "scan the incoherent pump rate over delta_pump");
  auto* sc_steady = app.add_subcommand("steady", "print one steady state");
  auto* sc_gain = app.add_subcommand("gain", "print one small-signal gain evaluation");
  auto* sc_thr = app.add_subcommand("threshold-map", "lasing margin map over (delta_pump, delta_cavity)");
  auto* sc_freq = app.add_subcommand("freq-map", "frequency-shift map over (delta_pump, delta_cavity)");
  auto* sc_power = app.add_subcommand("power-curve", "output power vs pump power");
  double p_min = 0.0, p_max = 10.0;
  int n_power = 41;
  sc_power->add_option("--pmin", p_min, "lowest pump power, mW");
  sc_power->add_option("--pmax", p_max, "highest pump power, mW");
  sc_power->add_option("--n", n_power, "number of points");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(config_path);
    if (sc_params->parsed()) cmd_params(cfg);
    else if (sc_pump->parsed()) cmd_pump_rate(cfg, out_base);
    else if (sc_steady->parsed()) cmd_steady(cfg);
    else if (sc_gain->parsed()) cmd_gain(cfg);
    else if (sc_thr->parsed()) cmd_map(cfg, MapTask::threshold, out_base, workers, resume_path, svg);
    else if (sc_freq->parsed()) cmd_map(cfg, MapTask::frequency, out_base, workers, resume_path, svg);
    else if (sc_power->parsed()) cmd_power_curve(cfg, out_base, p_min, p_max, n_power);
  } catch (const yblaser::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
