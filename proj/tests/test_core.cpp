#include <doctest.h>

#include <cmath>

#include "yblaser/core.hpp"
#include "oracles.hpp"

using namespace yblaser;

TEST_CASE("rabi_from_power reproduces the calibration pairings") {
  CHECK(rabi_from_power(0.0, 1.0) == 0.0);
  const PowerCalibration calib;
  CHECK(rabi_from_power(5.7, calib.k_pump) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(rabi_from_power(20.0, calib.k_mot) == doctest::Approx(19.0).epsilon(1e-12));
}

TEST_CASE("rabi_from_power scales as the square root exactly") {
  const PowerCalibration calib;
  test::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double p = rng.uniform(1e-6, 40.0);
    CHECK(rabi_from_power(4.0 * p, calib.k_pump) ==
          2.0 * rabi_from_power(p, calib.k_pump));
  }
}

TEST_CASE("rabi_from_power rejects negative power") {
  CHECK_THROWS_AS(rabi_from_power(-1.0, 1.0), domain_error);
  CHECK_THROWS_AS(rabi_from_power(1.0, 0.0), domain_error);
}

TEST_CASE("dressed_states: bare limits") {
  const DressedPair d = dressed_states(-30.0, 0.0);
  CHECK(d.lambda_minus == doctest::Approx(0.0));
  CHECK(d.lambda_plus == doctest::Approx(30.0));
  CHECK(d.cg_minus == doctest::Approx(1.0));
  CHECK(d.cb_plus == doctest::Approx(1.0));
}

TEST_CASE("dressed_states: resonant symmetric splitting") {
  const DressedPair d = dressed_states(0.0, 19.0);
  CHECK(d.lambda_minus == doctest::Approx(-9.5).epsilon(1e-12));
  CHECK(d.lambda_plus == doctest::Approx(9.5).epsilon(1e-12));
  CHECK(std::abs(d.cb_minus) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(d.cg_plus) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("dressed_states matches a dense 2x2 eigensolver") {
  const DressedPair d = dressed_states(-30.0, 19.0);
  CHECK(d.lambda_minus == doctest::Approx(-2.755).epsilon(2e-3));
  const test::Dressed2x2 o = test::dressed_eigensolver(-30.0, 19.0);
  CHECK(d.lambda_minus == doctest::Approx(o.lambda_minus).epsilon(1e-12));
  CHECK(d.lambda_plus == doctest::Approx(o.lambda_plus).epsilon(1e-12));
  const double cb2 = d.cb_minus * d.cb_minus;
  CHECK(cb2 == doctest::Approx(0.0776).epsilon(3e-3));
  // eigenvector moduli against the solver (sign conventions may differ)
  CHECK(std::abs(d.cg_minus) == doctest::Approx(std::abs(o.v_minus(0))).epsilon(1e-12));
  CHECK(std::abs(d.cb_minus) == doctest::Approx(std::abs(o.v_minus(1))).epsilon(1e-12));
}

TEST_CASE("dressed_states: trace and determinant identities on a random sweep") {
  test::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double delta = rng.uniform(-60.0, 60.0);
    const double omega = rng.uniform(0.0, 40.0);
    const DressedPair d = dressed_states(delta, omega);
    const double scale = std::max({1.0, std::abs(delta), omega});
    CHECK(std::abs(d.lambda_plus + d.lambda_minus - (-delta)) <= 1e-10 * scale);
    CHECK(std::abs(d.lambda_plus * d.lambda_minus - (-0.25 * omega * omega)) <=
          1e-10 * scale * scale);
    // normalization and orthogonality
    CHECK(d.cg_minus * d.cg_minus + d.cb_minus * d.cb_minus ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.cg_plus * d.cg_plus + d.cb_plus * d.cb_plus ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(d.cg_minus * d.cg_plus + d.cb_minus * d.cb_plus) < 1e-12);
    CHECK(d.lambda_minus <= d.lambda_plus);
  }
}

TEST_CASE("dressed_states: perturbative bound for weak dressing") {
  test::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const double delta = rng.uniform(-50.0, -10.0);
    const double omega = rng.uniform(1e-3, 0.3 * std::abs(delta));
    const DressedPair d = dressed_states(delta, omega);
    const double bound = omega * omega / (4.0 * std::abs(delta)) *
                         (1.0 + omega * omega / (delta * delta));
    CHECK(std::abs(d.lambda_minus) <= bound * (1.0 + 1e-12));
  }
}

TEST_CASE("derived_params reproduces the cavity figures of merit") {
  const CavitySpec cavity;
  const AtomSpec atom;
  const DerivedParams p = derived_params(cavity, atom);
  CHECK(p.c1 == doctest::Approx(0.341).epsilon(2e-3));
  CHECK(p.omega_cavity_collective == doctest::Approx(0.066 * std::sqrt(75000.0)).epsilon(1e-12));
  CHECK(p.omega_cavity_collective == doctest::Approx(18.07).epsilon(5e-3));
  CHECK(p.round_trip_s == doctest::Approx(2.0 * 0.0478 / 2.99792458e8).epsilon(1e-12));
  CHECK(p.watts_per_photon == doctest::Approx(1.68e-15).epsilon(0.01));
}

TEST_CASE("parameter records reject unphysical values") {
  AtomSpec atom;
  atom.gamma_g = -1.0;
  CHECK_THROWS_AS(atom.validate(), domain_error);
  atom = AtomSpec{};
  atom.gamma_g = atom.gamma_b + 1.0;
  CHECK_THROWS_AS(atom.validate(), domain_error);

  CavitySpec cavity;
  cavity.t_mirror = 1.5;
  CHECK_THROWS_AS(cavity.validate(), domain_error);

  OperatingPoint op;
  op.omega_mot = -2.0;
  CHECK_THROWS_AS(op.validate(), domain_error);
  op = OperatingPoint{};
  op.delta_cavity = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(op.validate(), domain_error);
}
