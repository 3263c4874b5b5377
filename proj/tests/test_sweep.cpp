#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <unistd.h>

#include "yblaser/sweep.hpp"

using namespace yblaser;

namespace {

GridSpec small_threshold_grid() {
  GridSpec g;
  g.x_min = 1.0;
  g.x_max = 4.0;
  g.nx = 6;
  g.y_min = -33.0;
  g.y_max = -27.0;
  g.ny = 5;
  g.task = MapTask::threshold;
  return g;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/yblaser_test_") + std::to_string(::getpid()) + "_" + name;
}

}  // namespace

TEST_CASE("unpumped grid is dark everywhere") {
  GridSpec g = small_threshold_grid();
  g.nx = g.ny = 2;
  g.base.omega_pump = 0.0;
  const Map2D m = run_map(g, SimConfig{}, 1);
  for (const double v : m.values) {
    CHECK(std::isfinite(v));
    CHECK(v < 0.0);
  }
}

TEST_CASE("grid axes are inclusive linspaces") {
  const GridSpec g = small_threshold_grid();
  CHECK(g.x(0) == 1.0);
  CHECK(g.x(g.nx - 1) == 4.0);
  CHECK(g.y(0) == -33.0);
  CHECK(g.y(g.ny - 1) == -27.0);
}

TEST_CASE("map values do not depend on the worker count") {
  const GridSpec g = small_threshold_grid();
  const Map2D serial = run_map(g, SimConfig{}, 1);
  const Map2D parallel = run_map(g, SimConfig{}, 4);
  REQUIRE(serial.values.size() == parallel.values.size());
  for (size_t k = 0; k < serial.values.size(); ++k) {
    const double a = serial.values[k], b = parallel.values[k];
    CHECK(((a == b) || (std::isnan(a) && std::isnan(b))));
  }
}

TEST_CASE("per-cell seeds are deterministic functions of the grid") {
  const GridSpec g = small_threshold_grid();
  CHECK(g.cell_seed(1, 2) == g.cell_seed(1, 2));
  CHECK(g.cell_seed(1, 2) != g.cell_seed(2, 1));
  GridSpec g2 = g;
  g2.base.omega_mot += 1.0;
  CHECK(g.cell_seed(1, 2) != g2.cell_seed(1, 2));
}

TEST_CASE("checkpoint resume reproduces an uninterrupted run") {
  const GridSpec g = small_threshold_grid();
  const std::string path = temp_path("ckpt");
  std::remove(path.c_str());

  const Map2D full = run_map(g, SimConfig{}, 2, path);

  // simulate a kill: keep the header and the first 9 finished cells
  {
    std::ifstream in(path);
    std::string line, kept;
    int n = 0;
    while (std::getline(in, line) && n < 10) {
      kept += line + "\n";
      ++n;
    }
    std::ofstream out(path, std::ios::trunc);
    out << kept;
  }
  const Map2D resumed = run_map(g, SimConfig{}, 2, path);
  REQUIRE(resumed.values.size() == full.values.size());
  for (size_t k = 0; k < full.values.size(); ++k) {
    const double a = full.values[k], b = resumed.values[k];
    CHECK(((a == b) || (std::isnan(a) && std::isnan(b))));
  }
  std::remove(path.c_str());
}

TEST_CASE("checkpoint refuses a mismatched grid") {
  const GridSpec g = small_threshold_grid();
  const std::string path = temp_path("ckpt_mismatch");
  std::remove(path.c_str());
  (void)run_map(g, SimConfig{}, 1, path);
  GridSpec other = g;
  other.x_max = 5.0;
  CHECK_THROWS_AS(run_map(other, SimConfig{}, 1, path), config_error);
  std::remove(path.c_str());
}

TEST_CASE("a torn trailing checkpoint line is tolerated") {
  const GridSpec g = small_threshold_grid();
  const std::string path = temp_path("ckpt_torn");
  std::remove(path.c_str());
  (void)run_map(g, SimConfig{}, 1, path);
  {
    std::ofstream out(path, std::ios::app);
    out << "3,2,-0.0";  // no newline, half-written value
  }
  const Map2D resumed = run_map(g, SimConfig{}, 1, path);
  CHECK(resumed.values.size() == size_t(g.nx) * g.ny);
  std::remove(path.c_str());
}

TEST_CASE("cell failures are recorded and the map completes") {
  GridSpec g = small_threshold_grid();
  g.nx = g.ny = 3;
  g.base.atom.gamma_b = 2e-12;  // degenerate generator in every cell
  g.base.atom.gamma_g = 1e-12;
  const Map2D m = run_map(g, SimConfig{}, 2);
  CHECK(m.errors.size() == 9);
  for (const double v : m.values) CHECK(std::isnan(v));
  // errors are sorted row-major
  for (size_t k = 1; k < m.errors.size(); ++k) {
    const CellError &a = m.errors[k - 1], &b = m.errors[k];
    CHECK((a.iy < b.iy || (a.iy == b.iy && a.ix < b.ix)));
  }
}

TEST_CASE("frequency task skips below-threshold cells as NaN") {
  GridSpec g;
  g.x_min = -4.0;
  g.x_max = -3.0;
  g.nx = 2;
  g.y_min = -10.0;
  g.y_max = -9.0;
  g.ny = 2;
  g.task = MapTask::frequency;
  g.base.omega_pump = 0.05;  // far below threshold everywhere
  const Map2D m = run_map(g, SimConfig{}, 1);
  for (const double v : m.values) CHECK(std::isnan(v));
  CHECK(m.errors.empty());
}

TEST_CASE("threshold map margins are technical frequencies") {
  GridSpec g = small_threshold_grid();
  g.nx = g.ny = 2;
  g.x_min = 2.7;
  g.x_max = 2.9;
  g.y_min = -30.5;
  g.y_max = -29.5;
  const Map2D m = run_map(g, SimConfig{}, 1);
  OperatingPoint op = g.base;
  op.delta_pump = g.x(0);
  op.delta_cavity = g.y(0);
  CHECK(m.at(0, 0) == doctest::Approx(tech(is_lasing(op).margin)).epsilon(1e-12));
}
