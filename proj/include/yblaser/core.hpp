#pragma once
// Parameter records, power calibration and dressed-state algebra for a
// cloud of three-level atoms (g = 1S0, b = 1P1 blue, e = 3P1 green) coupled
// to a single cavity mode.  The strong blue trapping field dresses the
// ground state; the dressed energies set both the pump resonance and the
// two-photon emission condition.

#include <cmath>
#include <string>

#include "yblaser/errors.hpp"
#include "yblaser/units.hpp"

namespace yblaser {

struct AtomSpec {
  double gamma_b = 29.1;    // 1P1 decay rate, MHz
  double gamma_g = 0.1824;  // 3P1 decay rate, MHz
  double lambda_b = 399.0;  // blue wavelength, nm
  double lambda_g = 556.0;  // green wavelength, nm

  void validate() const {
    if (!(gamma_b > 0.0) || !(gamma_g > 0.0))
      throw domain_error("AtomSpec: decay rates must be strictly positive");
    if (!(gamma_b > gamma_g))
      throw domain_error("AtomSpec: gamma_b must exceed gamma_g");
    if (!(lambda_b > 0.0) || !(lambda_g > 0.0))
      throw domain_error("AtomSpec: wavelengths must be strictly positive");
  }
};

struct CavitySpec {
  double kappa = 0.070;      // energy decay rate, MHz
  double g0 = 0.066;         // vacuum Rabi frequency, MHz
  double length_m = 0.0478;  // mirror spacing, m
  double t_mirror = 1.5e-6;  // per-mirror power transmission
  double n_atoms = 75000.0;  // effective atom number coupled to the mode

  void validate() const {
    if (!(kappa > 0.0)) throw domain_error("CavitySpec: kappa must be > 0");
    if (!(g0 > 0.0)) throw domain_error("CavitySpec: g0 must be > 0");
    if (!(length_m > 0.0)) throw domain_error("CavitySpec: length must be > 0");
    if (!(t_mirror > 0.0) || !(t_mirror < 1.0))
      throw domain_error("CavitySpec: t_mirror must lie in (0, 1)");
    if (!(n_atoms >= 0.0)) throw domain_error("CavitySpec: n_atoms must be >= 0");
  }
};

// All drive and cavity parameters of one simulation cell.  Detunings are
// referenced to the respective bare line centers; negative = red.
struct OperatingPoint {
  double delta_mot = -30.0;     // blue drive detuning, MHz
  double delta_pump = 0.0;      // green pump detuning, MHz
  double delta_cavity = -30.0;  // cavity detuning from the green line, MHz
  double omega_mot = 19.0;      // blue Rabi frequency, MHz
  double omega_pump = 1.5;      // green pump Rabi frequency, MHz
  AtomSpec atom;
  CavitySpec cavity;

  void validate() const {
    atom.validate();
    cavity.validate();
    if (!(omega_mot >= 0.0) || !(omega_pump >= 0.0))
      throw domain_error("OperatingPoint: Rabi frequencies must be >= 0");
    if (!std::isfinite(delta_mot) || !std::isfinite(delta_pump) ||
        !std::isfinite(delta_cavity))
      throw domain_error("OperatingPoint: detunings must be finite");
  }
};

// Square-root intensity calibration Omega = k * sqrt(P).  Defaults reproduce
// the measured pairings (1.5 MHz <-> 5.7 mW green, 19 MHz <-> 20 mW blue).
struct PowerCalibration {
  double k_pump = 1.5 / 2.3874672772626644;  // MHz per sqrt(mW); 2.387... = sqrt(5.7)
  double k_mot = 19.0 / 4.4721359549995796;  // sqrt(20)

  void validate() const {
    if (!(k_pump > 0.0) || !(k_mot > 0.0))
      throw domain_error("PowerCalibration: coefficients must be > 0");
  }
};

inline double rabi_from_power(double power_mw, double k_mhz_per_sqrt_mw) {
  if (!(power_mw >= 0.0))
    throw domain_error("rabi_from_power: power must be >= 0 mW");
  if (!(k_mhz_per_sqrt_mw > 0.0))
    throw domain_error("rabi_from_power: calibration coefficient must be > 0");
  return k_mhz_per_sqrt_mw * std::sqrt(power_mw);
}

// Eigen-decomposition of the dressed 2x2 ground-sector Hamiltonian
//   [ 0        W/2 ]
//   [ W/2     -D   ]      (g at zero, b at -delta_mot, coupling omega_mot/2)
// "minus" labels the smaller eigenvalue.  Energies in technical MHz.
struct DressedPair {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double cg_minus = 1.0, cb_minus = 0.0;  // |-> = cg|g> + cb|b>
  double cg_plus = 0.0, cb_plus = 1.0;
};

inline DressedPair dressed_states(double delta_mot, double omega_mot) {
  if (!(omega_mot >= 0.0))
    throw domain_error("dressed_states: omega_mot must be >= 0");
  DressedPair d;
  if (omega_mot == 0.0) {
    if (-delta_mot >= 0.0) {
      d.lambda_minus = 0.0;
      d.lambda_plus = -delta_mot;
      d.cg_minus = 1.0; d.cb_minus = 0.0;
      d.cg_plus = 0.0;  d.cb_plus = 1.0;
    } else {
      d.lambda_minus = -delta_mot;
      d.lambda_plus = 0.0;
      d.cg_minus = 0.0; d.cb_minus = 1.0;
      d.cg_plus = 1.0;  d.cb_plus = 0.0;
    }
    return d;
  }
  const double r = std::hypot(delta_mot, omega_mot);
  d.lambda_minus = 0.5 * (-delta_mot - r);
  d.lambda_plus = 0.5 * (-delta_mot + r);
  // eigenvector for eigenvalue L is proportional to (W/2, L); L never
  // vanishes here because omega_mot > 0
  const auto fill = [omega_mot](double lambda, double& cg, double& cb) {
    const double n = std::hypot(0.5 * omega_mot, lambda);
    cg = 0.5 * omega_mot / n;
    cb = lambda / n;
  };
  fill(d.lambda_minus, d.cg_minus, d.cb_minus);
  fill(d.lambda_plus, d.cg_plus, d.cb_plus);
  return d;
}

struct DerivedParams {
  double omega_cavity_collective = 0.0;  // g0 * sqrt(N), MHz
  double c1 = 0.0;                       // single-atom cooperativity
  double round_trip_s = 0.0;             // 2 L / c
  double watts_per_photon = 0.0;         // one-mirror output per photon, W
};

inline DerivedParams derived_params(const CavitySpec& cavity, const AtomSpec& atom) {
  cavity.validate();
  atom.validate();
  DerivedParams p;
  p.omega_cavity_collective = cavity.g0 * std::sqrt(cavity.n_atoms);
  p.c1 = cavity.g0 * cavity.g0 / (cavity.kappa * atom.gamma_g);
  p.round_trip_s = 2.0 * cavity.length_m / c_light_m_s;
  const double photon_energy_j = planck_h_js * c_light_m_s / (atom.lambda_g * 1e-9);
  p.watts_per_photon = photon_energy_j * cavity.t_mirror / p.round_trip_s;
  return p;
}

}  // namespace yblaser
