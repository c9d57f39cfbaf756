#pragma once

// Thermodynamic-limit 1D transverse-field Ising chain,
//
//   beta H / N = -K sigma_x sigma_x - C sigma_z   (nearest neighbour),
//
// through its free-fermion end products: the dispersion
// Lambda(phi) = sqrt(K^2 + C^2 - 2KC cos phi), the Katsura free energy,
// exact thermal averages, the mean-field self-consistency equation in the
// transverse magnetization s, and the per-spin correlation bound.
//
// Everything is per spin. The exact single-site <sigma_x> under the
// interacting thermal state has no closed form, so the bound substitutes
// <sigma_x> ~ s; that substitution is recorded as AverageMode::PaperFaithful
// and no other mode is offered here.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <vector>

#include "corrbound/bound_core.hpp"
#include "corrbound/couplings.hpp"
#include "corrbound/errors.hpp"
#include "corrbound/numerics/quadrature.hpp"
#include "corrbound/numerics/roots.hpp"
#include "corrbound/numerics/stable.hpp"

namespace corrbound::tfim {

inline constexpr double kPi = std::numbers::pi_v<double>;

struct DispersionPoint {
  double phi = 0.0;
  double lambda = 0.0;  // >= |K - C|
};

// Fermionic mode beta-energy. The radicand is a perfect square at phi = 0
// but round-off can push it a hair negative; clamp before the sqrt.
inline double dispersion(const Couplings& p, double phi) {
  const double r = p.K * p.K + p.C * p.C - 2.0 * p.K * p.C * std::cos(phi);
  return std::sqrt(std::max(r, 0.0));
}

// ln Z / N = ln 2 + (1/pi) Int_0^pi ln cosh Lambda(w) dw
inline double ln_z_per_spin(const Couplings& p, double tol = 1e-10) {
  const auto q = numerics::integrate_0_pi(
      [&](double w) { return numerics::ln_cosh(dispersion(p, w)); }, tol);
  return numerics::kLn2 + q.value / kPi;
}

// beta <H>_H / N = -(1/pi) Int_0^pi Lambda tanh Lambda dw
inline double beta_avg_h_per_spin(const Couplings& p, double tol = 1e-10) {
  const auto q = numerics::integrate_0_pi(
      [&](double w) {
        const double lam = dispersion(p, w);
        return lam * std::tanh(lam);
      },
      tol);
  return -q.value / kPi;
}

// <sigma_z> = (1/pi) Int_0^pi (C - K cos w) tanh(Lambda)/Lambda dw.
// tanhc supplies the finite w->0 limit on the critical line K = C.
inline double sigma_z_mean(const Couplings& p, double tol = 1e-10) {
  const auto q = numerics::integrate_0_pi(
      [&](double w) {
        return (p.C - p.K * std::cos(w)) * numerics::tanhc(dispersion(p, w));
      },
      tol);
  return q.value / kPi;
}

// Finite-ring mode energies K*Lambda_k at phi_k = 2 pi k / N,
// k = -N/2+1 ... N/2 (the 1/N boundary term is dropped).
inline std::vector<double> finite_spectrum(const Couplings& p, int n) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidN("finite_spectrum needs an even chain length >= 4");
  }
  std::vector<double> modes;
  modes.reserve(static_cast<std::size_t>(n));
  for (int k = -n / 2 + 1; k <= n / 2; ++k) {
    modes.push_back(dispersion(p, 2.0 * kPi * std::abs(k) / n));
  }
  return modes;
}

namespace detail {

// Fixed-point map for the transverse magnetization, valid for s >= 0:
//   rhs(s) = 2K(C+R)/(K^2+(C+R)^2) * tanh R,  R = sqrt(C^2 + s^2 K^2).
inline double sc_rhs_nonneg(const Couplings& p, double s) {
  if (p.K == 0.0) return 0.0;  // no interaction, no transverse moment
  const double r = std::sqrt(p.C * p.C + s * s * p.K * p.K);
  const double cr = p.C + r;
  return 2.0 * p.K * cr / (p.K * p.K + cr * cr) * std::tanh(r);
}

}  // namespace detail

// Eigenvector weight product of the single-site mean-field Hamiltonian;
// only the product ab is ever needed: the fixed-point map factors as
// rhs = -2 ab tanh R. Zero when K = 0 (field eigenbasis).
inline double ab_product(const Couplings& p, double s) {
  if (p.K == 0.0) return 0.0;
  const double r = std::sqrt(p.C * p.C + s * s * p.K * p.K);
  const double cr = p.C + r;
  return -p.K * cr / (p.K * p.K + cr * cr);
}

// s - rhs(s), extended oddly to s < 0 so the C = 0 branch set is symmetric.
// For C > 0 the extension jumps at s = 0; the scan below validates residuals
// so that artifact never surfaces as a root.
inline double self_consistency_residual(const Couplings& p, double s) {
  const double rhs = detail::sc_rhs_nonneg(p, std::fabs(s));
  return s - (std::signbit(s) ? -rhs : rhs);
}

// ln Z_MF / N = ln(2 cosh R)
inline double mf_ln_z_per_spin(const Couplings& p, double s) {
  return numerics::ln_2cosh(std::sqrt(p.C * p.C + s * s * p.K * p.K));
}

namespace detail {

// s-dependent part of the per-spin bound; the quadrature terms are the same
// for every branch, so branch ranking never needs an integral.
inline double branch_score(const Couplings& p, double s) {
  return numerics::ln_cosh(std::sqrt(p.C * p.C + s * s * p.K * p.K)) -
         p.K * s * s;
}

}  // namespace detail

// Branches pinned against |s| = 1 mean the map's fixed point sits at or
// beyond the physical boundary; treat them as out of range.
inline constexpr double kSaturation = 0.99;

// All residual roots on [-1, 1] by sign-change scan + bisection. Principal
// branch minimizes the bound (ties: larger |s|, then s > 0). When no branch
// exists the endpoint residual signs tell whether a root escaped past |s|=1.
inline MeanFieldSolution solve_s(const Couplings& p, int scan_points = 2000) {
  MeanFieldSolution sol;
  auto residual = [&](double s) { return self_consistency_residual(p, s); };
  for (const auto& r : numerics::find_roots_scan(residual, -1.0, 1.0, scan_points)) {
    sol.branches.push_back(r.root);
    sol.residuals.push_back(r.residual);
  }
  for (double b : sol.branches) {
    if (std::fabs(b) >= kSaturation) sol.out_of_range_detected = true;
  }
  if (residual(1.0) < 0.0 || residual(-1.0) > 0.0) {
    sol.out_of_range_detected = true;
  }
  if (sol.branches.empty()) {
    sol.principal = 0.0;
    sol.converged = false;
    if (p.C > 0.0) sol.out_of_range_detected = true;
    return sol;
  }
  double best = sol.branches.front();
  double best_score = detail::branch_score(p, best);
  for (double b : sol.branches) {
    const double score = detail::branch_score(p, b);
    const bool better =
        score < best_score - 1e-14 ||
        (std::fabs(score - best_score) <= 1e-14 &&
         (std::fabs(b) > std::fabs(best) + 1e-14 ||
          (std::fabs(std::fabs(b) - std::fabs(best)) <= 1e-14 && b > best)));
    if (better) {
      best = b;
      best_score = score;
    }
  }
  sol.principal = best;
  sol.converged = true;
  return sol;
}

// Model interface for the generic bound assembly. Only PaperFaithful
// averaging exists in the thermodynamic limit.
inline BoundModel model() {
  BoundModel m;
  m.name = "tfim";
  m.normalization = Normalization::PerSpin;
  m.n_spins = 1;
  m.ln_z = [](const Couplings& p) { return ln_z_per_spin(p); };
  m.beta_avg_h = [](const Couplings& p) { return beta_avg_h_per_spin(p); };
  m.ln_z_mf = [](const Couplings& p, double s) { return mf_ln_z_per_spin(p, s); };
  m.beta_avg_hmf_under_h = [](const Couplings& p, double s, AverageMode mode) {
    if (mode != AverageMode::PaperFaithful) {
      throw UnsupportedMode(
          "tfim: <sigma_x> under the interacting thermal state has no closed "
          "form; only the <sigma_x> ~ s substitution is available");
    }
    return -p.K * s * s - p.C * sigma_z_mean(p);
  };
  m.solve_s = [](const Couplings& p, AverageMode) { return solve_s(p).principal; };
  return m;
}

// Per-spin bound at a caller-chosen s (term-wise testable form).
inline BoundReport bound_per_spin_at(const Couplings& p, double s,
                                     AverageMode mode = AverageMode::PaperFaithful,
                                     bool solver_ok = true) {
  return correlation_bound(model(), p, s, mode, solver_ok);
}

// Per-spin bound at the principal mean-field branch.
inline BoundReport bound_per_spin(const Couplings& p,
                                  AverageMode mode = AverageMode::PaperFaithful) {
  const MeanFieldSolution sol = solve_s(p);
  return bound_per_spin_at(p, sol.principal, mode,
                           sol.converged && !sol.out_of_range_detected);
}

// Large-K limit of the bound per spin, E/N <= K(s - s^2); evaluate only in
// the documented asymptotic regime (C fixed, K large).
inline double asymptotic_bound_large_k(const Couplings& p, double s) {
  return p.K * (s - s * s);
}

// Smallest K with a nonzero self-consistent branch at C = 0, bisected to
// tol. The predicate needs only a residual scan, no quadrature.
inline double critical_k_at_zero_field(double tol = 1e-4) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  auto has_nonzero_branch = [](double k) {
    const Couplings p{k, 0.0};
    constexpr int kGrid = 2000;
    for (int i = 1; i <= kGrid; ++i) {
      const double s = static_cast<double>(i) / kGrid;
      if (self_consistency_residual(p, s) <= 0.0) return true;
    }
    return false;
  };
  double lo = 1.0, hi = 2.0;
  if (has_nonzero_branch(lo) || !has_nonzero_branch(hi)) {
    throw NonConvergence("critical_k_at_zero_field: bracket [1, 2] failed");
  }
  int guard = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (has_nonzero_branch(mid) ? hi : lo) = mid;
    if (++guard > 200) {
      throw NonConvergence("critical_k_at_zero_field: bisection stalled");
    }
  }
  return 0.5 * (lo + hi);
}

struct ValidityEntry {
  Couplings p;
  double s = 0.0;
  double bound_per_spin = 0.0;
  bool mf_valid = false;
  bool trivial = false;
};

// Flags over a caller-supplied grid, reported in input order. Per-point
// failures become nan + invalid rather than aborting the scan.
inline std::vector<ValidityEntry> validity_region_scan(
    const std::vector<Couplings>& grid) {
  std::vector<ValidityEntry> table;
  table.reserve(grid.size());
  for (const Couplings& p : grid) {
    ValidityEntry e;
    e.p = p;
    try {
      const BoundReport r = bound_per_spin(p);
      e.s = r.s;
      e.bound_per_spin = r.per_spin_bound;
      e.mf_valid = r.mf_valid;
      e.trivial = r.trivial;
    } catch (const Error&) {
      e.s = std::numeric_limits<double>::quiet_NaN();
      e.bound_per_spin = std::numeric_limits<double>::quiet_NaN();
      e.mf_valid = false;
      e.trivial = false;
    }
    table.push_back(e);
  }
  return table;
}

}  // namespace corrbound::tfim
