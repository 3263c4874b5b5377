#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "yblaser/spectrum.hpp"

using namespace yblaser;

namespace {

Trajectory synthetic(double interval, double t_end,
                     const std::function<complexd(double)>& f) {
  Trajectory tr;
  tr.sample_interval = interval;
  tr.dt = interval;
  tr.stride = 1;
  for (double t = 0.0; t <= t_end + 1e-12; t += interval) {
    tr.times.push_back(t);
    tr.field.push_back(f(t));
  }
  return tr;
}

}  // namespace

TEST_CASE("hand-rolled fft agrees with a direct transform") {
  std::vector<complexd> x(16);
  for (size_t n = 0; n < x.size(); ++n)
    x[n] = complexd(std::sin(0.7 * n + 0.3), std::cos(1.3 * n));
  std::vector<complexd> want(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    complexd acc = 0.0;
    for (size_t n = 0; n < x.size(); ++n)
      acc += x[n] * std::polar(1.0, two_pi * double(k * n) / double(x.size()));
    want[k] = acc;
  }
  std::vector<complexd> got = x;
  detail::fft_radix2(got, +1);
  for (size_t k = 0; k < x.size(); ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);
}

TEST_CASE("a rotating tone registers at its signed frequency") {
  // exp(-i 2 pi f t) must appear at +f; this pins the sign convention
  const double f_true = -13.3777;
  SimConfig cfg;
  cfg.t_transient = 200.0;
  cfg.t_window = 256.0;
  const Trajectory tr = synthetic(4e-3, 460.0, [&](double t) {
    return 2.0 * std::polar(1.0, -two_pi * f_true * t);
  });
  OperatingPoint op;
  const LasingReport rep = analyze(tr, op, cfg);
  CHECK(rep.peak_found);
  CHECK(rep.lasing);  // mean 4 photons
  CHECK(rep.mean_photons == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(std::abs(rep.f_peak - f_true) < 0.2 * rep.resolution);
  CHECK(rep.shift == doctest::Approx(f_true - op.delta_cavity).epsilon(1e-3));
  CHECK(rep.resolution == doctest::Approx(1.0 / 256.0));
}

TEST_CASE("peak interpolation is sub-bin accurate across bin offsets") {
  SimConfig cfg;
  cfg.t_transient = 0.0;
  cfg.t_window = 256.0;
  OperatingPoint op;
  for (const double frac : {0.13, 0.37, 0.5}) {
    const double bin = 1.0 / 256.0;
    const double f_true = -30.0 + frac * bin;
    const Trajectory tr = synthetic(4e-3, 257.0, [&](double t) {
      return 3.0 * std::polar(1.0, -two_pi * f_true * t);
    });
    const LasingReport rep = analyze(tr, op, cfg);
    CHECK(std::abs(rep.f_peak - f_true) < 0.2 * rep.resolution);
  }
}

TEST_CASE("a featureless window reports below threshold") {
  SimConfig cfg;
  cfg.t_transient = 0.0;
  cfg.t_window = 64.0;
  const Trajectory tr = synthetic(4e-3, 65.0, [](double) { return complexd(0, 0); });
  OperatingPoint op;
  const LasingReport rep = analyze(tr, op, cfg);
  CHECK_FALSE(rep.lasing);
  CHECK_FALSE(rep.peak_found);
  CHECK(std::isnan(rep.shift));
}

TEST_CASE("output power converts photons through the mirror flux") {
  SimConfig cfg;
  cfg.t_transient = 0.0;
  cfg.t_window = 64.0;
  OperatingPoint op;
  const Trajectory tr = synthetic(4e-3, 65.0, [&](double t) {
    return 2.0 * std::polar(1.0, -two_pi * (-30.0) * t);
  });
  const LasingReport rep = analyze(tr, op, cfg);
  const double wpp = derived_params(op.cavity, op.atom).watts_per_photon;
  CHECK(rep.output_watts == doctest::Approx(4.0 * wpp).epsilon(1e-9));
}

TEST_CASE("analyze rejects a window the trajectory does not cover") {
  SimConfig cfg;
  cfg.t_transient = 100.0;
  cfg.t_window = 256.0;
  const Trajectory tr = synthetic(4e-3, 80.0, [](double) { return complexd(1, 0); });
  OperatingPoint op;
  CHECK_THROWS_AS(analyze(tr, op, cfg), domain_error);
}
