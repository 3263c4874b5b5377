#include <doctest.h>

#include <cmath>
#include <complex>

#include "yblaser/dynamics.hpp"
#include "yblaser/spectrum.hpp"
#include "yblaser/threshold.hpp"

using namespace yblaser;

namespace {

SimConfig fast_cfg() {
  SimConfig cfg;
  cfg.t_transient = 0.0;
  cfg.t_window = 64.0;
  return cfg;
}

}  // namespace

TEST_CASE("decoupled cavity follows the closed-form decay") {
  OperatingPoint op;
  op.cavity.n_atoms = 0.0;
  op.omega_pump = 0.0;
  op.delta_cavity = -30.0;
  SimConfig cfg = fast_cfg();
  cfg.dt = 2.5e-4;  // keeps the integrator's amplitude bias below 0.01%
  cfg.seed_amp = 1.0;
  const Trajectory tr = integrate(op, cfg);

  const double kappa = ang(op.cavity.kappa);
  const complexd rate(-0.5 * kappa, -ang(op.delta_cavity));
  const complexd a0 = tr.field.front();
  double max_err = 0.0;
  for (size_t k = 0; k < tr.times.size() && tr.times[k] <= 20.0; ++k) {
    const complexd expect = a0 * std::exp(rate * tr.times[k]);
    max_err = std::max(max_err, std::abs(tr.field[k] - expect));
  }
  CHECK(max_err < 1e-3);  // amplitude and phase together

  // photon half-life ln2/kappa = 1.576 us
  double t_half = 0.0;
  for (size_t k = 1; k < tr.times.size(); ++k) {
    if (std::norm(tr.field[k]) <= 0.5) {
      const double p0 = std::norm(tr.field[k - 1]);
      const double p1 = std::norm(tr.field[k]);
      const double f = (0.5 - p0) / (p1 - p0);
      t_half = tr.times[k - 1] + f * (tr.times[k] - tr.times[k - 1]);
      break;
    }
  }
  CHECK(t_half == doctest::Approx(std::log(2.0) / kappa).epsilon(5e-4));
  CHECK(t_half == doctest::Approx(1.576).epsilon(1.3e-3));
}

TEST_CASE("no pump: the seeded field dies and the atoms settle in g") {
  OperatingPoint op;
  op.omega_pump = 0.0;
  op.omega_mot = 0.0;
  op.delta_pump = 0.0;
  SimConfig cfg = fast_cfg();
  const Trajectory tr = integrate(op, cfg);
  CHECK(std::norm(tr.field.back()) < 1e-6);
  CHECK(tr.final_rho(lvl_g, lvl_g).real() > 1.0 - 1e-4);
  const LasingReport rep = analyze(tr, op, cfg);
  CHECK_FALSE(rep.lasing);
  CHECK(std::isnan(rep.shift));
}

TEST_CASE("trajectory residuals stay within the structural budget") {
  OperatingPoint op;
  op.delta_pump = 2.8;
  op.delta_cavity = -31.0;
  SimConfig cfg;
  cfg.t_transient = 20.0;
  cfg.t_window = 64.0;
  const Trajectory tr = integrate(op, cfg);
  REQUIRE(!tr.state_checks.empty());
  for (const ResidualSample& r : tr.state_checks) {
    CHECK(r.trace_err < 1e-6);
    CHECK(r.herm_err < 1e-6);
    CHECK(r.min_eig > -1e-6);
  }
}

TEST_CASE("lasing point grows from the seed and clamps near the gain solution") {
  OperatingPoint op;
  op.delta_pump = 2.8;
  op.delta_cavity = -31.0;
  SimConfig cfg;  // defaults: 200 us transient, 256 us window
  const Trajectory tr = integrate(op, cfg);
  const LasingReport rep = analyze(tr, op, cfg);
  CHECK(rep.lasing);
  CHECK(rep.mean_photons > 1.0);
  const double n_clamp = saturated_photon_number(op);
  CHECK(rep.mean_photons == doctest::Approx(n_clamp).epsilon(0.2));
}

TEST_CASE("halving dt leaves the observables in place") {
  OperatingPoint op;
  op.delta_pump = 2.8;
  op.delta_cavity = -31.0;
  SimConfig cfg;
  cfg.t_transient = 50.0;
  cfg.t_window = 64.0;
  const LasingReport coarse = analyze(integrate(op, cfg), op, cfg);
  cfg.dt = 0.5e-3;
  const LasingReport fine = analyze(integrate(op, cfg), op, cfg);
  REQUIRE(coarse.lasing);
  REQUIRE(fine.lasing);
  CHECK(std::abs(coarse.f_peak - fine.f_peak) < coarse.resolution);
  CHECK(coarse.mean_photons == doctest::Approx(fine.mean_photons).epsilon(0.01));
}

TEST_CASE("the seed phase does not matter") {
  OperatingPoint op;
  op.delta_pump = 2.8;
  op.delta_cavity = -31.0;
  SimConfig cfg;
  cfg.rng_seed = 7;
  const LasingReport r1 = analyze(integrate(op, cfg), op, cfg);
  cfg.rng_seed = 424242;
  const LasingReport r2 = analyze(integrate(op, cfg), op, cfg);
  CHECK(r1.mean_photons == doctest::Approx(r2.mean_photons).epsilon(0.02));
  CHECK(std::abs(r1.f_peak - r2.f_peak) < r1.resolution);
}

TEST_CASE("sampling stride is clamped to keep the Nyquist margin") {
  OperatingPoint op;
  op.omega_pump = 0.0;
  op.delta_cavity = -30.0;
  SimConfig cfg = fast_cfg();
  const Trajectory tr = integrate(op, cfg);
  CHECK(tr.stride == 4);  // 1/(2 dt stride) = 125 MHz > 4 * 30 MHz
  CHECK(tr.sample_interval == doctest::Approx(4e-3));
  CHECK(1.0 / (2.0 * tr.sample_interval) > 4.0 * 30.0);
}

TEST_CASE("a step too coarse to sample the detunings is rejected") {
  OperatingPoint op;
  SimConfig cfg = fast_cfg();
  cfg.dt = 0.02;  // even stride 1 cannot reach the Nyquist margin
  CHECK_THROWS_AS(integrate(op, cfg), domain_error);
}

TEST_CASE("rates beyond the halving budget raise a stiffness error") {
  OperatingPoint op;
  op.atom.gamma_b = 1e5;  // decay far above anything dt halving can absorb
  SimConfig cfg = fast_cfg();
  CHECK_THROWS_AS(integrate(op, cfg), numerical_error);
}

TEST_CASE("experimental coherent-pump mode runs and is marked") {
  OperatingPoint op;
  op.delta_pump = 2.8;
  op.delta_cavity = -31.0;
  SimConfig cfg;
  cfg.t_transient = 10.0;
  cfg.t_window = 64.0;
  cfg.coherent_pump = true;
  const Trajectory tr = integrate(op, cfg);
  CHECK(tr.coherent_pump);
  const LasingReport rep = analyze(tr, op, cfg);
  CHECK(rep.coherent_pump);
}
