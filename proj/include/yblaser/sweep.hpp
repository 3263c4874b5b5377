#pragma once
// Parallel evaluation of maps over (delta_pump, delta_cavity) grids.  Cells
// are pure functions of (grid, sim config, ix, iy) -- including the per-cell
// rng seed -- so results are bit-identical for any worker count.  Finished
// cells stream to an append-only checkpoint that a later run can resume.
//
// Checkpoint byte layout: one header line "# yblaser-map 1 <hex64 grid hash>"
// followed by text lines "ix,iy,value" (value printed with %.17g, "nan" for
// failed or below-threshold cells).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "yblaser/spectrum.hpp"
#include "yblaser/threshold.hpp"
#include "yblaser/version.hpp"

namespace yblaser {

enum class MapTask { threshold, gain, frequency, photons };

inline const char* to_string(MapTask t) {
  switch (t) {
    case MapTask::threshold: return "threshold";
    case MapTask::gain: return "gain";
    case MapTask::frequency: return "frequency";
    case MapTask::photons: return "photons";
  }
  return "?";
}

namespace detail {

inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

struct GridSpec {
  double x_min = -4.0, x_max = 8.0;     // delta_pump axis, MHz
  int nx = 60;
  double y_min = -40.0, y_max = -20.0;  // delta_cavity axis, MHz
  int ny = 60;
  OperatingPoint base;
  MapTask task = MapTask::threshold;

  void validate() const {
    base.validate();
    if (nx < 2 || ny < 2) throw domain_error("GridSpec: nx and ny must be >= 2");
    if (!(x_min < x_max) || !(y_min < y_max))
      throw domain_error("GridSpec: need min < max on both axes");
  }

  double x(int ix) const {
    return x_min + (x_max - x_min) * static_cast<double>(ix) /
                       static_cast<double>(nx - 1);
  }
  double y(int iy) const {
    return y_min + (y_max - y_min) * static_cast<double>(iy) /
                       static_cast<double>(ny - 1);
  }

  // canonical text form; feeds the checkpoint hash and per-cell seeds
  std::string canonical() const {
    using detail::fmt_g17;
    std::string s;
    s += fmt_g17(x_min) + "," + fmt_g17(x_max) + "," + std::to_string(nx) + ";";
    s += fmt_g17(y_min) + "," + fmt_g17(y_max) + "," + std::to_string(ny) + ";";
    s += to_string(task);
    s += ";op:";
    for (const double v : {base.delta_mot, base.delta_pump, base.delta_cavity,
                           base.omega_mot, base.omega_pump, base.atom.gamma_b,
                           base.atom.gamma_g, base.atom.lambda_b, base.atom.lambda_g,
                           base.cavity.kappa, base.cavity.g0, base.cavity.length_m,
                           base.cavity.t_mirror, base.cavity.n_atoms})
      s += fmt_g17(v) + ",";
    return s;
  }

  std::uint64_t hash() const { return detail::fnv1a64(canonical()); }

  std::uint64_t cell_seed(int ix, int iy) const {
    return detail::fnv1a64(std::to_string(ix) + "," + std::to_string(iy),
                           detail::fnv1a64(canonical()));
  }
};

struct CellError {
  int ix = 0, iy = 0;
  std::string what;
};

// Gridded result.  Values are technical units at the user surface: margins
// and gains in MHz, frequency shifts in MHz, photon numbers dimensionless.
// NaN marks below-threshold frequency cells and failed cells.
struct Map2D {
  GridSpec grid;
  SimConfig sim;
  std::vector<double> values;  // [iy * nx + ix]
  std::vector<CellError> errors;
  double elapsed_s = 0.0;
  int workers = 1;
  std::string version = version_string;

  double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * grid.nx + ix]; }
};

namespace detail {

inline double eval_cell(const GridSpec& grid, const SimConfig& cfg, int ix, int iy) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  OperatingPoint op = grid.base;
  op.delta_pump = grid.x(ix);
  op.delta_cavity = grid.y(iy);
  switch (grid.task) {
    case MapTask::threshold:
      return tech(is_lasing(op).margin);
    case MapTask::gain:
      return tech(small_signal_gain(op).gain);
    case MapTask::frequency: {
      if (!is_lasing(op).lasing) return nan;  // skip the expensive dynamics
      SimConfig c = cfg;
      c.rng_seed = grid.cell_seed(ix, iy);
      const LasingReport rep = analyze(integrate(op, c), op, c);
      return rep.lasing ? rep.shift : nan;
    }
    case MapTask::photons: {
      if (!is_lasing(op).lasing) return 0.0;
      SimConfig c = cfg;
      c.rng_seed = grid.cell_seed(ix, iy);
      return analyze(integrate(op, c), op, c).mean_photons;
    }
  }
  return nan;
}

struct CheckpointData {
  std::vector<char> done;
  std::vector<double> values;
};

inline std::string checkpoint_header(const GridSpec& grid) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "# yblaser-map 1 %016llx",
                static_cast<unsigned long long>(grid.hash()));
  return buf;
}

inline CheckpointData read_checkpoint(const GridSpec& grid, const std::string& path) {
  const size_t total = static_cast<size_t>(grid.nx) * grid.ny;
  CheckpointData data;
  data.done.assign(total, 0);
  data.values.assign(total, std::numeric_limits<double>::quiet_NaN());
  std::ifstream in(path);
  if (!in) return data;  // nothing to resume
  std::string line;
  if (!std::getline(in, line)) return data;
  if (line != checkpoint_header(grid))
    throw config_error("checkpoint '" + path + "' does not match this grid");
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  for (size_t k = 0; k < lines.size(); ++k) {
    int ix = 0, iy = 0;
    char vbuf[64] = {0};
    const int got = std::sscanf(lines[k].c_str(), "%d,%d,%40s", &ix, &iy, vbuf);
    char* end = nullptr;
    const double value = got == 3 ? std::strtod(vbuf, &end) : 0.0;
    const bool ok = got == 3 && end != vbuf && *end == '\0' && ix >= 0 &&
                    ix < grid.nx && iy >= 0 && iy < grid.ny;
    if (!ok) {
      if (k + 1 == lines.size()) break;  // tolerate one torn trailing line
      throw config_error("checkpoint '" + path + "': malformed line " +
                         std::to_string(k + 2));
    }
    const size_t idx = static_cast<size_t>(iy) * grid.nx + ix;
    data.values[idx] = value;
    data.done[idx] = 1;
  }
  return data;
}

}  // namespace detail

// Evaluate the grid task per cell.  Cell-level failures are recorded (value
// NaN) and the map completes.  With a checkpoint path, finished cells are
// appended as they complete and a resumed run skips them.
inline Map2D run_map(const GridSpec& grid, const SimConfig& cfg, int workers = 1,
                     const std::string& checkpoint_path = "") {
  grid.validate();
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const size_t total = static_cast<size_t>(grid.nx) * grid.ny;

  Map2D map;
  map.grid = grid;
  map.sim = cfg;
  map.workers = std::max(1, workers);
  map.values.assign(total, std::numeric_limits<double>::quiet_NaN());
  std::vector<char> done(total, 0);

  std::ofstream ckpt;
  if (!checkpoint_path.empty()) {
    detail::CheckpointData prev = detail::read_checkpoint(grid, checkpoint_path);
    bool any = false;
    for (size_t k = 0; k < total; ++k) {
      if (prev.done[k]) {
        map.values[k] = prev.values[k];
        done[k] = 1;
        any = true;
      }
    }
    ckpt.open(checkpoint_path, std::ios::app);
    if (!ckpt) throw config_error("cannot open checkpoint '" + checkpoint_path + "'");
    if (!any && ckpt.tellp() == 0)
      ckpt << detail::checkpoint_header(grid) << "\n" << std::flush;
  }

  std::mutex io_mutex;
  std::atomic<size_t> next{0};
  const auto worker_fn = [&]() {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      if (done[idx]) continue;
      const int ix = static_cast<int>(idx % static_cast<size_t>(grid.nx));
      const int iy = static_cast<int>(idx / static_cast<size_t>(grid.nx));
      double value = std::numeric_limits<double>::quiet_NaN();
      std::string err;
      try {
        value = detail::eval_cell(grid, cfg, ix, iy);
      } catch (const std::exception& e) {
        err = e.what();
      }
      map.values[idx] = value;
      if (!err.empty() || !checkpoint_path.empty()) {
        std::lock_guard<std::mutex> lock(io_mutex);
        if (!err.empty()) map.errors.push_back({ix, iy, err});
        if (ckpt.is_open()) {
          ckpt << ix << "," << iy << ","
               << (std::isnan(value) ? std::string("nan") : detail::fmt_g17(value))
               << "\n"
               << std::flush;
        }
      }
    }
  };

  if (map.workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(map.workers));
    for (int i = 0; i < map.workers; ++i) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }

  std::sort(map.errors.begin(), map.errors.end(),
            [](const CellError& a, const CellError& b) {
              return a.iy != b.iy ? a.iy < b.iy : a.ix < b.ix;
            });
  map.elapsed_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
  return map;
}

}  // namespace yblaser
