#pragma once
// Driven-damped three-level Bloch equations for one atom, plus the mean-field
// cavity equation.  In the frame rotating at the blue drive frequency on
// g<->b and at a chosen green frame frequency on g<->e:
//
//   H/hbar  = -Dmot |b><b| - Dgreen |e><e|
//             + (Wmot/2)(|b><g| + |g><b|) + g0 (a |e><g| + a* |g><e|)
//   drho/dt = -i[H, rho] + Gb D[|g><b|]rho + Gg D[|g><e|]rho + w D[|e><g|]rho
//   da/dt   = (-i 2pi (delta_cavity - Dgreen) - kappa/2) a
//             - i g0 N <e|rho|g>
//
// with D[c]rho = c rho c+ - {c+c, rho}/2 and every symbol angular (rad/us).
// The incoherent pump enters only through the rate w; the pump Rabi frequency
// never appears coherently here.  The field amplitude a is a c-number in
// sqrt(photons); collective coupling enters the field equation through N
// alone, the atom always sees the single-atom g0.
//
// Basis order (g, b, e) and column-major vectorization
// vec(rho)[i + 3 j] = rho(i, j) are fixed; every consumer shares them.
// A field component rotating as exp(-i 2pi f t) is reported at frequency +f.

#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "yblaser/core.hpp"

namespace yblaser {

using complexd = std::complex<double>;

enum Level : int { lvl_g = 0, lvl_b = 1, lvl_e = 2 };

// 3x3 Hermitian, unit-trace atomic state over (g, b, e).
using DensityMatrix = Eigen::Matrix3cd;

// 9x9 time-independent generator acting on column-vectorized states.
using Generator = Eigen::Matrix<complexd, 9, 9>;
using StateVec = Eigen::Matrix<complexd, 9, 1>;

// Rotating-frame bookkeeping for the green leg: the frame frequency relative
// to the bare g<->e line, and a frozen drive amplitude in that frame.
struct FrameSpec {
  double delta_green = 0.0;  // MHz
  complexd field_amp = 0.0;  // sqrt(photons)
};

inline StateVec vec(const DensityMatrix& rho) {
  return Eigen::Map<const StateVec>(rho.data());
}

inline DensityMatrix unvec(const StateVec& v) {
  return Eigen::Map<const DensityMatrix>(v.data());
}

inline Eigen::Matrix3cd hamiltonian(const OperatingPoint& op, const FrameSpec& frame) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(lvl_b, lvl_b) = -ang(op.delta_mot);
  h(lvl_e, lvl_e) = -ang(frame.delta_green);
  const double half_mot = 0.5 * ang(op.omega_mot);
  h(lvl_b, lvl_g) += half_mot;
  h(lvl_g, lvl_b) += half_mot;
  const complexd drive = ang(op.cavity.g0) * frame.field_amp;
  h(lvl_e, lvl_g) += drive;
  h(lvl_g, lvl_e) += std::conj(drive);
  return h;
}

namespace detail {

inline Generator kron3(const Eigen::Matrix3cd& x, const Eigen::Matrix3cd& y) {
  Generator k;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      k.block<3, 3>(3 * p, 3 * q) = x(p, q) * y;
  return k;
}

// rate * D[|to><from|] in vectorized form
inline void add_dissipator(Generator& gen, int to, int from, double rate) {
  if (rate == 0.0) return;
  Eigen::Matrix3cd c = Eigen::Matrix3cd::Zero();
  c(to, from) = 1.0;
  const Eigen::Matrix3cd cdc = c.adjoint() * c;
  const Eigen::Matrix3cd id = Eigen::Matrix3cd::Identity();
  gen += rate * (kron3(c.conjugate(), c) - 0.5 * kron3(id, cdc) -
                 0.5 * kron3(cdc.transpose(), id));
}

}  // namespace detail

// Row functional extracting d(trace)/dt; annihilated by any generator.
inline Eigen::Matrix<complexd, 1, 9> trace_functional() {
  Eigen::Matrix<complexd, 1, 9> t = Eigen::Matrix<complexd, 1, 9>::Zero();
  t(0) = t(4) = t(8) = 1.0;
  return t;
}

// Generator L with vec(drho/dt) = L vec(rho) for the equations above, the
// field amplitude frozen at frame.field_amp.
inline Generator build_generator(const OperatingPoint& op, const FrameSpec& frame,
                                 double pump_w) {
  op.validate();
  if (!(pump_w >= 0.0))
    throw domain_error("build_generator: pump rate must be >= 0");
  const Eigen::Matrix3cd h = hamiltonian(op, frame);
  const Eigen::Matrix3cd id = Eigen::Matrix3cd::Identity();
  const complexd iu(0.0, 1.0);
  Generator gen = -iu * (detail::kron3(id, h) - detail::kron3(h.transpose(), id));
  detail::add_dissipator(gen, lvl_g, lvl_b, ang(op.atom.gamma_b));
  detail::add_dissipator(gen, lvl_g, lvl_e, ang(op.atom.gamma_g));
  detail::add_dissipator(gen, lvl_e, lvl_g, pump_w);
  return gen;
}

// Unique rho with L vec(rho) = 0 and unit trace, obtained by replacing the
// d rho_gg / dt row with the trace constraint and solving directly.
inline DensityMatrix steady_state(const Generator& gen) {
  Generator a = gen;
  a.row(0).setZero();
  a(0, 0) = a(0, 4) = a(0, 8) = 1.0;
  StateVec b = StateVec::Zero();
  b(0) = 1.0;
  Eigen::PartialPivLU<Generator> lu(a);
  const double rc = lu.rcond();
  if (!(rc > 1e-13)) {
    std::ostringstream os;
    os << "steady_state: degenerate steady manifold, rcond = " << rc;
    throw numerical_error(os.str());
  }
  const StateVec x = lu.solve(b);
  const DensityMatrix rho = unvec(x);

  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const double tr_err = std::abs(rho.trace() - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(0.5 * (rho + rho.adjoint()));
  const double min_eig = es.eigenvalues().minCoeff();
  if (herm > 1e-10 || tr_err > 1e-10 || min_eig < -1e-8) {
    std::ostringstream os;
    os << "steady_state: invariants violated (hermiticity " << herm
       << ", trace error " << tr_err << ", min eigenvalue " << min_eig
       << ", rcond " << rc << ")";
    throw numerical_error(os.str());
  }
  return rho;
}

struct MeanFieldDeriv {
  DensityMatrix drho;
  complexd da;
};

namespace detail {

inline DensityMatrix lindblad_rhs(const DensityMatrix& rho, const Eigen::Matrix3cd& h,
                                  double gamma_b, double gamma_g, double pump_w) {
  const complexd iu(0.0, 1.0);
  DensityMatrix d = -iu * (h * rho - rho * h);
  const auto decay = [&d, &rho](int to, int from, double rate) {
    if (rate == 0.0) return;
    d(to, to) += rate * rho(from, from);
    for (int k = 0; k < 3; ++k) {
      d(from, k) -= 0.5 * rate * rho(from, k);
      d(k, from) -= 0.5 * rate * rho(k, from);
    }
  };
  decay(lvl_g, lvl_b, gamma_b);
  decay(lvl_g, lvl_e, gamma_g);
  decay(lvl_e, lvl_g, pump_w);
  return d;
}

}  // namespace detail

// Coupled mean-field derivatives (atom + cavity amplitude) at one instant.
// The atom sees the drive amplitude a; the cavity term uses <e|rho|g>, the
// expectation of |g><e|.
inline MeanFieldDeriv rhs(const DensityMatrix& rho, complexd a,
                          const OperatingPoint& op, double pump_w,
                          const FrameSpec& frame) {
  FrameSpec fr = frame;
  fr.field_amp = a;
  const Eigen::Matrix3cd h = hamiltonian(op, fr);
  MeanFieldDeriv out;
  out.drho = detail::lindblad_rhs(rho, h, ang(op.atom.gamma_b),
                                  ang(op.atom.gamma_g), pump_w);
  const complexd iu(0.0, 1.0);
  const double det = ang(op.delta_cavity - frame.delta_green);
  out.da = (-iu * det - 0.5 * ang(op.cavity.kappa)) * a -
           iu * ang(op.cavity.g0) * op.cavity.n_atoms * rho(lvl_e, lvl_g);
  return out;
}

// Structure residuals of a candidate density matrix.
struct StateResiduals {
  double trace_err = 0.0;
  double herm_err = 0.0;
  double min_eig = 0.0;
};

inline StateResiduals density_matrix_residuals(const DensityMatrix& rho) {
  StateResiduals r;
  r.trace_err = std::abs(rho.trace() - 1.0);
  r.herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(0.5 * (rho + rho.adjoint()));
  r.min_eig = es.eigenvalues().minCoeff();
  return r;
}

}  // namespace yblaser
