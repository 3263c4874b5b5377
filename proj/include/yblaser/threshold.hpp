#pragma once
// Small-signal gain, lasing predicate, threshold pump power and the
// gain-clamped photon number.  Gain is probed with a frozen real test field
// at the empty-cavity frequency; lasing is declared when the weak-field gain
// exceeds the cavity energy loss rate.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "yblaser/pump.hpp"

namespace yblaser {

struct GainResult {
  double gain = 0.0;      // field energy gain rate, rad/us
  double kappa = 0.0;     // cavity energy loss rate, rad/us
  double margin = 0.0;    // gain - kappa
  double test_amp = 0.0;  // probe amplitude used, sqrt(photons)
  bool converged = false;
};

// Energy gain rate of a frozen field of amplitude amp (real, sqrt photons),
// with the green frame at the empty-cavity frequency.
inline double gain_at_amplitude(const OperatingPoint& op, double pump_w, double amp) {
  if (!(amp > 0.0)) throw domain_error("gain_at_amplitude: amp must be > 0");
  FrameSpec fr;
  fr.delta_green = op.delta_cavity;
  fr.field_amp = complexd(amp, 0.0);
  const DensityMatrix rho = steady_state(build_generator(op, fr, pump_w));
  const complexd rho_ge = rho(lvl_g, lvl_e);
  return -2.0 * ang(op.cavity.g0) * op.cavity.n_atoms * std::imag(rho_ge * amp) /
         (amp * amp);
}

// Weak-field gain: the test amplitude starts at 1e-2 sqrt(photons) and is
// halved until another halving changes the gain by less than 1% (a small
// absolute floor keeps the refinement terminating when the gain itself is
// numerically zero).  Positive gain means amplification.
inline GainResult small_signal_gain(const OperatingPoint& op) {
  op.validate();
  const double w = pump_rate(op);
  const double kappa = ang(op.cavity.kappa);
  double amp = 1e-2;
  double g_prev = gain_at_amplitude(op, w, amp);
  std::ostringstream seq;
  seq << g_prev;
  for (int i = 0; i < 10; ++i) {
    amp *= 0.5;
    const double g_half = gain_at_amplitude(op, w, amp);
    seq << ", " << g_half;
    if (std::abs(g_half - g_prev) <= 0.01 * std::abs(g_half) + 1e-9) {
      GainResult r;
      r.gain = g_half;
      r.kappa = kappa;
      r.margin = g_half - kappa;
      r.test_amp = amp;
      r.converged = true;
      return r;
    }
    g_prev = g_half;
  }
  throw numerical_error("small_signal_gain: test-amplitude refinement did not "
                        "converge; gain sequence [" + seq.str() + "] rad/us");
}

struct LasingDecision {
  bool lasing = false;
  double margin = 0.0;  // rad/us
  GainResult gain;
};

inline LasingDecision is_lasing(const OperatingPoint& op) {
  LasingDecision d;
  d.gain = small_signal_gain(op);
  d.margin = d.gain.margin;
  d.lasing = d.gain.margin > 0.0;
  return d;
}

// Bisection on the pump power until the bracket is narrower than 0.05 mW.
// The bracket must straddle the lasing boundary.
inline double threshold_pump_power(const OperatingPoint& base,
                                   const PowerCalibration& calib,
                                   double p_low_mw, double p_high_mw) {
  base.validate();
  calib.validate();
  if (!(p_low_mw >= 0.0) || !(p_high_mw > p_low_mw))
    throw domain_error("threshold_pump_power: need 0 <= p_low < p_high");
  const auto lasing_at = [&](double p_mw) {
    OperatingPoint op = base;
    op.omega_pump = rabi_from_power(p_mw, calib.k_pump);
    return is_lasing(op).lasing;
  };
  if (lasing_at(p_low_mw))
    throw no_threshold_error("threshold_pump_power: already lasing at bracket low");
  if (!lasing_at(p_high_mw))
    throw no_threshold_error("threshold_pump_power: no lasing at bracket high");
  double lo = p_low_mw, hi = p_high_mw;
  while (hi - lo >= 0.05) {
    const double mid = 0.5 * (lo + hi);
    (lasing_at(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Gain-clamped intracavity photon number: the n solving G(a = sqrt(n)) =
// kappa, found by bisection after an expanding search.  Returns 0 below
// threshold.  The sampled gain must be non-increasing in n over the bracket.
inline double saturated_photon_number(const OperatingPoint& op) {
  const LasingDecision dec = is_lasing(op);
  if (!dec.lasing) return 0.0;
  const double w = pump_rate(op);
  const double kappa = ang(op.cavity.kappa);
  const auto gain_of_n = [&](double n) { return gain_at_amplitude(op, w, std::sqrt(n)); };

  std::vector<std::pair<double, double>> samples;  // (n, G)
  const double n_lo = dec.gain.test_amp * dec.gain.test_amp;
  samples.emplace_back(n_lo, dec.gain.gain);
  double n_hi = std::max(1.0, 4.0 * n_lo);
  for (;;) {
    const double g_hi = gain_of_n(n_hi);
    samples.emplace_back(n_hi, g_hi);
    if (g_hi < kappa) break;
    n_hi *= 4.0;
    if (n_hi > 1e15) {
      throw numerical_error("saturated_photon_number: gain never falls below "
                            "the cavity loss up to n = 1e15");
    }
  }
  const auto check_monotone = [&samples]() {
    std::vector<std::pair<double, double>> s = samples;
    std::sort(s.begin(), s.end());
    for (size_t k = 1; k < s.size(); ++k) {
      if (s[k].second > s[k - 1].second + 1e-9 + 1e-6 * std::abs(s[k - 1].second)) {
        std::ostringstream os;
        os << "saturated_photon_number: gain is not monotone in n; samples";
        for (const auto& [n, g] : s) os << " (" << n << ", " << g << ")";
        throw numerical_error(os.str());
      }
    }
  };

  double lo = n_lo, hi = n_hi;
  while (hi - lo > 0.01 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gain_of_n(mid);
    samples.emplace_back(mid, gm);
    (gm > kappa ? lo : hi) = mid;
  }
  check_monotone();
  return 0.5 * (lo + hi);
}

}  // namespace yblaser
