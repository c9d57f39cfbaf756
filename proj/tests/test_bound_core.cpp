#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "corrbound/bound_core.hpp"
#include "corrbound/heisenberg2.hpp"
#include "corrbound/numerics/roots.hpp"
#include "corrbound/tfim.hpp"

using Catch::Approx;
using corrbound::AverageMode;
using corrbound::BoundModel;
using corrbound::Couplings;

namespace {

// Minimal model with hand-checkable arithmetic.
BoundModel stub_model() {
  BoundModel m;
  m.name = "stub";
  m.normalization = corrbound::Normalization::Total;
  m.n_spins = 2;
  m.ln_z = [](const Couplings& p) { return 1.0 + p.K; };
  m.beta_avg_h = [](const Couplings&) { return -2.0; };
  m.ln_z_mf = [](const Couplings&, double s) { return 2.0 + s; };
  m.beta_avg_hmf_under_h = [](const Couplings&, double s, AverageMode) {
    return -1.0 + s;
  };
  return m;
}

}  // namespace

TEST_CASE("bound assembly arithmetic", "[bound_core]") {
  const auto m = stub_model();
  const Couplings p{1.0, 0.0};
  const auto r = corrbound::correlation_bound(m, p, 0.25, AverageMode::Exact);

  CHECK(r.ln_z == 2.0);
  CHECK(r.ln_z_mf == 2.25);
  CHECK(r.beta_gap == Approx(1.25).margin(1e-15));
  // assembled once, from its own parts
  CHECK(r.bound == r.ln_z_mf - r.ln_z + r.beta_gap);
  CHECK(r.per_spin_bound == Approx(r.bound / 2.0).margin(1e-15));
  CHECK(r.s == 0.25);
  CHECK(r.mf_valid);
  // per-spin 0.75 exceeds ln 2: flagged trivial, still reported
  CHECK(r.trivial);

  const auto small = corrbound::correlation_bound(m, p, -0.9, AverageMode::Exact);
  CHECK_FALSE(small.trivial);
}

TEST_CASE("bound validity flags", "[bound_core]") {
  const auto m = stub_model();
  const Couplings p{0.5, 0.5};

  CHECK_FALSE(corrbound::correlation_bound(m, p, 1.5, AverageMode::Exact).mf_valid);
  CHECK_FALSE(corrbound::correlation_bound(m, p, 0.5, AverageMode::Exact, false).mf_valid);
  CHECK_FALSE(corrbound::correlation_bound(
                  m, p, std::numeric_limits<double>::quiet_NaN(), AverageMode::Exact)
                  .mf_valid);
  CHECK(corrbound::correlation_bound(m, p, 1.0, AverageMode::Exact).mf_valid);
}

TEST_CASE("sandwich requires mean-field-state averages", "[bound_core]") {
  CHECK_THROWS_AS(corrbound::bogoliubov_sandwich(stub_model(), Couplings{1, 1}, 0.1),
                  corrbound::UnsupportedMode);
  CHECK_THROWS_AS(
      corrbound::bogoliubov_sandwich(corrbound::tfim::model(), Couplings{1, 1}, 0.1),
      corrbound::UnsupportedMode);
  CHECK_NOTHROW(corrbound::bogoliubov_sandwich(corrbound::heisenberg2::model(),
                                               Couplings{1, 1}, 0.1));
}

TEST_CASE("classical mean-field branches", "[bound_core][classical]") {
  // subcritical, zero field: only the paramagnetic root
  const auto sub = corrbound::classical_ising_mf_solve(Couplings{0.5, 0.0});
  CHECK(sub.converged);
  REQUIRE(sub.branches.size() == 1);
  CHECK(std::fabs(sub.branches[0]) <= 1e-10);
  CHECK(std::fabs(sub.principal) <= 1e-10);
  CHECK_FALSE(sub.out_of_range_detected);

  // supercritical: symmetric pair plus zero, principal is the positive branch
  const auto super = corrbound::classical_ising_mf_solve(Couplings{2.0, 0.0});
  REQUIRE(super.branches.size() == 3);
  CHECK(super.branches[0] == Approx(-super.branches[2]).margin(1e-10));
  CHECK(super.branches[1] == Approx(0.0).margin(1e-10));
  // frozen: root of s = tanh(2s)
  CHECK(super.principal == Approx(0.9575040240772688).margin(1e-9));
  for (std::size_t i = 0; i < super.branches.size(); ++i) {
    CHECK(std::fabs(super.residuals[i]) <= 1e-10);
  }

  // in-test oracle: plain bisection of s - tanh(Ks) on [0.5, 1]
  double lo = 0.5, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((mid - std::tanh(2.0 * mid) > 0.0) ? hi : lo) = mid;
  }
  CHECK(super.principal == Approx(0.5 * (lo + hi)).margin(1e-9));

  // nonzero-branch onset straddles K = 1
  CHECK(corrbound::classical_ising_mf_solve(Couplings{0.999, 0.0}).branches.size() == 1);
  CHECK(corrbound::classical_ising_mf_solve(Couplings{1.001, 0.0}).branches.size() == 3);

  // field tilts the equation: principal follows tanh(Ks + C)
  const auto tilted = corrbound::classical_ising_mf_solve(Couplings{0.5, 1.0});
  REQUIRE_FALSE(tilted.branches.empty());
  CHECK(tilted.principal ==
        Approx(std::tanh(0.5 * tilted.principal + 1.0)).margin(1e-10));
}

TEST_CASE("susceptibility gap", "[bound_core]") {
  const auto h2 = corrbound::heisenberg2::model();

  // K = 0: bound and gap vanish identically in C, so the difference is 0
  CHECK(corrbound::susceptibility_gap(h2, Couplings{0.0, 1.0}, 1e-3,
                                      AverageMode::Exact) == Approx(0.0).margin(1e-6));

  // stencil-width stability at an interacting point
  const double g1 = corrbound::susceptibility_gap(h2, Couplings{1.0, 1.0}, 1e-3,
                                                  AverageMode::Exact);
  const double g2 = corrbound::susceptibility_gap(h2, Couplings{1.0, 1.0}, 2e-3,
                                                  AverageMode::Exact);
  CHECK(g1 == Approx(g2).margin(1e-5));

  BoundModel no_solver = stub_model();
  CHECK_THROWS_AS(corrbound::susceptibility_gap(no_solver, Couplings{1, 1}, 1e-3,
                                                AverageMode::Exact),
                  corrbound::UnsupportedMode);
}

TEST_CASE("fluctuation validity ratio", "[bound_core]") {
  // analytic check at K = 0: ln Z = 2 ln(2 cosh C) for the two-qubit model,
  // so chi/m^2 = (2 sech^2 C)/(2 tanh C)^2
  const auto h2 = corrbound::heisenberg2::model();
  const double c = 1.0;
  const double expected = (2.0 / std::pow(std::cosh(c), 2)) /
                          std::pow(2.0 * std::tanh(c), 2);
  CHECK(corrbound::fluctuation_validity(h2, Couplings{0.0, c}, 1e-3) ==
        Approx(expected).margin(1e-6));

  // strong field, weak coupling: fluctuations small relative to m^2
  const auto tf = corrbound::tfim::model();
  CHECK(corrbound::fluctuation_validity(tf, Couplings{0.1, 2.0}, 1e-3) < 0.2);
  // near-zero magnetization: ratio blows up
  CHECK(corrbound::fluctuation_validity(tf, Couplings{2.0, 0.01}, 1e-3) >= 1.0);

  BoundModel flat = stub_model();
  flat.ln_z = [](const Couplings&) { return 3.0; };
  CHECK(std::isinf(corrbound::fluctuation_validity(flat, Couplings{1, 1}, 1e-3)));
}
