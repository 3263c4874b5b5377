#pragma once
// Spectral extraction of the lasing frequency.  The trajectory window is
// Hann-weighted, zero-padded to a power of two and Fourier transformed with
// the convention that a component rotating as exp(-i 2pi f t) registers at
// +f.  The dominant bin is refined by quadratic interpolation on log power.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "yblaser/dynamics.hpp"

namespace yblaser {

struct LasingReport {
  double mean_photons = 0.0;  // <|a|^2> over the analysis window
  double f_peak = std::numeric_limits<double>::quiet_NaN();  // MHz, bare-green frame
  double shift = std::numeric_limits<double>::quiet_NaN();   // f_peak - delta_cavity
  bool lasing = false;
  double output_watts = 0.0;  // one-mirror output power
  double resolution = 0.0;    // 1 / t_window, MHz
  bool peak_found = false;
  bool coherent_pump = false;
};

namespace detail {

inline size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// in-place radix-2 transform, X_k = sum_n x_n exp(sign * 2pi i k n / N)
inline void fft_radix2(std::vector<complexd>& x, int sign) {
  const size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw domain_error("fft_radix2: size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = static_cast<double>(sign) * two_pi / static_cast<double>(len);
    const complexd wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const complexd u = x[i + k];
        const complexd v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

inline double hann(size_t n, size_t total) {
  if (total <= 1) return 1.0;
  const double c = std::cos(two_pi * static_cast<double>(n) /
                            static_cast<double>(total - 1));
  return 0.5 * (1.0 - c);
}

}  // namespace detail

// Analyze the settled part of a trajectory: mean photon number over the
// window, dominant spectral component and its shift from the empty cavity.
// A spectrum whose maximum does not exceed 10x the median floor reports
// below-threshold (no peak).  The shift is only defined while lasing.
inline LasingReport analyze(const Trajectory& traj, const OperatingPoint& op,
                            const SimConfig& cfg) {
  op.validate();
  cfg.validate();
  if (traj.sample_interval <= 0.0 || traj.field.size() < 2)
    throw domain_error("analyze: empty trajectory");
  const double interval = traj.sample_interval;
  const size_t n_win = static_cast<size_t>(std::llround(cfg.t_window / interval));
  const size_t i0 = static_cast<size_t>(
      std::ceil((cfg.t_transient - 1e-9) / interval));
  if (n_win < 2 || i0 + n_win > traj.field.size())
    throw domain_error("analyze: trajectory does not cover transient + window");

  LasingReport rep;
  rep.resolution = 1.0 / cfg.t_window;
  rep.coherent_pump = traj.coherent_pump;

  double sum = 0.0;
  for (size_t k = 0; k < n_win; ++k) sum += std::norm(traj.field[i0 + k]);
  rep.mean_photons = sum / static_cast<double>(n_win);
  rep.lasing = rep.mean_photons > 1.0;
  rep.output_watts =
      rep.mean_photons * derived_params(op.cavity, op.atom).watts_per_photon;

  const size_t n_fft = detail::next_pow2(n_win);
  std::vector<complexd> x(n_fft, complexd(0.0, 0.0));
  for (size_t k = 0; k < n_win; ++k)
    x[k] = traj.field[i0 + k] * detail::hann(k, n_win);
  detail::fft_radix2(x, +1);

  std::vector<double> power(n_fft);
  for (size_t k = 0; k < n_fft; ++k) power[k] = std::norm(x[k]);
  const size_t k_max = static_cast<size_t>(
      std::max_element(power.begin(), power.end()) - power.begin());
  std::vector<double> tmp = power;
  std::nth_element(tmp.begin(), tmp.begin() + n_fft / 2, tmp.end());
  const double median = tmp[n_fft / 2];

  if (!(power[k_max] > 0.0) || !(power[k_max] > 10.0 * median)) {
    rep.lasing = false;  // no resolvable line
    return rep;
  }

  const double pl = power[(k_max + n_fft - 1) % n_fft];
  const double pc = power[k_max];
  const double pr = power[(k_max + 1) % n_fft];
  double offset = 0.0;
  if (pl > 0.0 && pr > 0.0) {
    const double ll = std::log(pl), lc = std::log(pc), lr = std::log(pr);
    const double denom = ll - 2.0 * lc + lr;
    if (denom < 0.0) offset = std::clamp(0.5 * (ll - lr) / denom, -0.5, 0.5);
  }
  const double bin_width = 1.0 / (static_cast<double>(n_fft) * interval);  // MHz
  const double k_signed = (k_max <= n_fft / 2)
                              ? static_cast<double>(k_max)
                              : static_cast<double>(k_max) - static_cast<double>(n_fft);
  rep.f_peak = (k_signed + offset) * bin_width;
  rep.peak_found = true;
  if (rep.lasing) rep.shift = rep.f_peak - op.delta_cavity;
  return rep;
}

}  // namespace yblaser
