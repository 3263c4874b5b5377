#pragma once
// Unit helpers.  Every public interface speaks technical frequencies (MHz),
// powers (mW) and times (us).  The equations of motion use angular rates in
// rad/us; ang()/tech() are the only conversion points.

#include <numbers>

namespace yblaser {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// technical MHz -> angular rad/us
inline constexpr double ang(double f_mhz) { return two_pi * f_mhz; }

// angular rad/us -> technical MHz
inline constexpr double tech(double w_rad_us) { return w_rad_us / two_pi; }

// SI constants for the photon-flux conversion
inline constexpr double planck_h_js = 6.62607015e-34;
inline constexpr double c_light_m_s = 2.99792458e8;

}  // namespace yblaser
