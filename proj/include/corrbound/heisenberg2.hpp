#pragma once

// Exact two-qubit antiferromagnetic Heisenberg model in a uniform field,
//
//   beta H = C (sigma_z x 1 + 1 x sigma_z) + K sigma.sigma,   K >= 0,
//
// diagonal in the triplet/singlet basis with beta-energies
// {2C+K, K, -2C+K, -3K}. Every quantity here is closed-form; the model
// doubles as a ground truth for the generic bound assembly.
//
// sigma_z |up> = +|up>. Levels are identified by beta-energy, never by ket
// label: the lowest triplet (-2C+K) crosses the singlet (-3K) at C = 2K.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include <Eigen/Dense>

#include "corrbound/bound_core.hpp"
#include "corrbound/couplings.hpp"
#include "corrbound/errors.hpp"
#include "corrbound/numerics/density_matrix.hpp"
#include "corrbound/numerics/roots.hpp"
#include "corrbound/numerics/stable.hpp"

namespace corrbound::heisenberg2 {

// Order: triplet up-up, triplet zero, triplet down-down, singlet.
inline std::array<double, 4> spectrum(const Couplings& p) {
  return {2.0 * p.C + p.K, p.K, -2.0 * p.C + p.K, -3.0 * p.K};
}

struct HeisenbergThermo {
  std::array<double, 4> beta_energies{};
  std::array<double, 4> log_populations{};  // -E_i - ln Z
  std::array<double, 4> populations{};
  double ln_z = 0.0;
};

inline HeisenbergThermo thermo(const Couplings& p) {
  HeisenbergThermo t;
  t.beta_energies = spectrum(p);
  std::array<double, 4> neg = t.beta_energies;
  for (double& e : neg) e = -e;
  t.ln_z = numerics::logsumexp(std::span<const double>(neg));
  for (int i = 0; i < 4; ++i) {
    t.log_populations[i] = neg[i] - t.ln_z;
    t.populations[i] = std::exp(t.log_populations[i]);
  }
  return t;
}

// ln of Z = 2(e^{-K} cosh 2C + e^{K} cosh 2K), evaluated as a stabilized
// sum over the four levels.
inline double ln_z(const Couplings& p) { return thermo(p).ln_z; }

namespace detail {

// Columns: the four thermal eigenvectors in the product basis
// |uu>, |ud>, |du>, |dd>.
inline Eigen::MatrixXcd eigenbasis() {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  v(0, 0) = 1.0;                // |uu>
  v(1, 1) = r; v(2, 1) = r;     // (|ud> + |du>)/sqrt2
  v(3, 2) = 1.0;                // |dd>
  v(1, 3) = r; v(2, 3) = -r;    // (|ud> - |du>)/sqrt2
  return v;
}

}  // namespace detail

inline numerics::DensityMatrix thermal_state(const Couplings& p) {
  const HeisenbergThermo t = thermo(p);
  Eigen::VectorXd lp(4);
  for (int i = 0; i < 4; ++i) lp(i) = t.log_populations[i];
  return numerics::DensityMatrix::from_log_spectrum(detail::eigenbasis(), lp);
}

// beta <H>_H = sum_i p_i (beta E_i)
inline double beta_avg_h(const Couplings& p) {
  const HeisenbergThermo t = thermo(p);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += t.populations[i] * t.beta_energies[i];
  return acc;
}

// I = S(rho_1) + S(rho_2) - S(rho), computed two ways: the closed-form
// population expression and the generic entropy/partial-trace route. The
// generic value is returned; disagreement beyond 1e-9 is a hard error.
inline double mutual_information(const Couplings& p) {
  const HeisenbergThermo t = thermo(p);

  // Marginal of either qubit is diagonal: P(up) = p0 + (p1 + p3)/2.
  const std::array<double, 3> up = {t.log_populations[0],
                                    t.log_populations[1] - numerics::kLn2,
                                    t.log_populations[3] - numerics::kLn2};
  const std::array<double, 3> dn = {t.log_populations[2],
                                    t.log_populations[1] - numerics::kLn2,
                                    t.log_populations[3] - numerics::kLn2};
  const double lq_up = numerics::logsumexp(std::span<const double>(up));
  const double lq_dn = numerics::logsumexp(std::span<const double>(dn));
  double closed = -2.0 * (std::exp(lq_up) * lq_up + std::exp(lq_dn) * lq_dn);
  for (int i = 0; i < 4; ++i) {
    closed += t.populations[i] * t.log_populations[i];
  }

  const numerics::DensityMatrix rho = thermal_state(p);
  const double generic =
      numerics::von_neumann_entropy(numerics::partial_trace(rho, {2, 2}, 0)) +
      numerics::von_neumann_entropy(numerics::partial_trace(rho, {2, 2}, 1)) -
      numerics::von_neumann_entropy(rho);

  if (std::fabs(closed - generic) > 1e-9) {
    throw InternalInconsistency(
        "heisenberg2::mutual_information: closed form and entropy route "
        "disagree");
  }
  return generic;
}

struct MeanFieldAnsatz3 {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
};

inline MeanFieldAnsatz3 checked_ansatz(double sx, double sy, double sz) {
  const bool comp_ok = std::fabs(sx) <= 1.0 && std::fabs(sy) <= 1.0 &&
                       std::fabs(sz) <= 1.0;
  if (!comp_ok || sx * sx + sy * sy + sz * sz > 1.0 + 1e-9) {
    throw std::invalid_argument("mean spin components must lie in the Bloch ball");
  }
  return {sx, sy, sz};
}

// ln Z_MF = 2 ln(2 cosh R), R = sqrt((C + sz K)^2 + (sx^2 + sy^2) K^2)
inline double mf_ln_z(const Couplings& p, const MeanFieldAnsatz3& s) {
  const double az = p.C + s.sz * p.K;
  const double r = std::sqrt(az * az + (s.sx * s.sx + s.sy * s.sy) * p.K * p.K);
  return 2.0 * numerics::ln_2cosh(r);
}

// z-only reduction used by the bound (the thermal state has sx = sy = 0).
inline double mf_ln_z(const Couplings& p, double sz) {
  return mf_ln_z(p, MeanFieldAnsatz3{0.0, 0.0, sz});
}

// Per-qubit <sigma_z> under the thermal state is p0 - p2; the published
// closed form carries an extra 1/2 relative to that trace, and both
// readings are kept (see sz_mean modes).
inline double sz_mean(const Couplings& p, AverageMode mode) {
  switch (mode) {
    case AverageMode::Exact: {
      const HeisenbergThermo t = thermo(p);
      return t.populations[0] - t.populations[2];
    }
    case AverageMode::PaperFaithful: {
      // -e^{-K} sinh(2C) / Z, restated in populations for stability
      const HeisenbergThermo t = thermo(p);
      return 0.5 * (t.populations[0] - t.populations[2]);
    }
    case AverageMode::SelfConsistent: {
      // root of s + tanh(C + K s) = 0; monotone, always bracketed by [-1, 1]
      const auto r = numerics::solve_bracketed(
          [&](double s) { return s + std::tanh(p.C + p.K * s); }, -1.0, 1.0,
          1e-14);
      return r.root;
    }
  }
  throw UnsupportedMode("heisenberg2::sz_mean: unknown mode");
}

// beta <H_MF>_H with H_MF = (C + K sz)(sigma_z x 1 + 1 x sigma_z).
// Exact: (C + K sz) * 2(p0 - p2). PaperFaithful: half of that (the
// published display). SelfConsistent averages exactly at the caller's s.
inline double beta_avg_hmf(const Couplings& p, double sz, AverageMode mode) {
  const HeisenbergThermo t = thermo(p);
  const double field = p.C + p.K * sz;
  const double two_szbar = 2.0 * (t.populations[0] - t.populations[2]);
  if (mode == AverageMode::PaperFaithful) return field * 0.5 * two_szbar;
  return field * two_szbar;
}

// Product mean-field reference state: each qubit thermal under a sigma_z
// field of strength a = C + K sz.
inline numerics::DensityMatrix mf_state(const Couplings& p, double sz) {
  const double a = p.C + p.K * sz;
  const double c = 2.0 * numerics::ln_2cosh(a);
  Eigen::VectorXd lp(4);
  lp << -2.0 * a - c, -c, -c, 2.0 * a - c;
  return numerics::DensityMatrix::from_log_spectrum(Eigen::MatrixXcd::Identity(4, 4),
                                                    lp);
}

// Averages under the mean-field state (single-qubit <sigma_z>_MF = -tanh a):
//   beta <H_MF>_MF = -2 a tanh a
//   beta <H>_MF    = -2 C tanh a + K tanh^2 a
inline double beta_avg_hmf_under_mf(const Couplings& p, double sz) {
  const double a = p.C + p.K * sz;
  return -2.0 * a * std::tanh(a);
}

inline double beta_avg_h_under_mf(const Couplings& p, double sz) {
  const double th = std::tanh(p.C + p.K * sz);
  return -2.0 * p.C * th + p.K * th * th;
}

inline BoundModel model() {
  BoundModel m;
  m.name = "heisenberg2";
  m.normalization = Normalization::Total;
  m.n_spins = 2;
  m.ln_z = [](const Couplings& p) { return ln_z(p); };
  m.beta_avg_h = [](const Couplings& p) { return beta_avg_h(p); };
  m.ln_z_mf = [](const Couplings& p, double s) { return mf_ln_z(p, s); };
  m.beta_avg_hmf_under_h = [](const Couplings& p, double s, AverageMode mode) {
    return beta_avg_hmf(p, s, mode);
  };
  m.solve_s = [](const Couplings& p, AverageMode mode) { return sz_mean(p, mode); };
  m.beta_avg_h_under_mf = [](const Couplings& p, double s) {
    return beta_avg_h_under_mf(p, s);
  };
  m.beta_avg_hmf_under_mf = [](const Couplings& p, double s) {
    return beta_avg_hmf_under_mf(p, s);
  };
  return m;
}

// Total-correlation bound at the mode's own mean-field sz. In Exact mode
// this equals S(rho || rho_MF) identically.
inline BoundReport bound(const Couplings& p, AverageMode mode) {
  return correlation_bound(model(), p, sz_mean(p, mode), mode);
}

// Field strength where the lowest triplet meets the singlet: -2C+K = -3K.
inline double level_crossing_field(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("level crossing needs K > 0");
  return 2.0 * k;
}

}  // namespace corrbound::heisenberg2
