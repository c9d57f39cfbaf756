#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "corrbound/ed_oracle.hpp"
#include "corrbound/heisenberg2.hpp"
#include "corrbound/numerics/density_matrix.hpp"
#include "corrbound/numerics/stable.hpp"
#include "corrbound/tfim.hpp"

using Catch::Approx;
using corrbound::Couplings;
namespace ed = corrbound::ed;
namespace h2 = corrbound::heisenberg2;
namespace num = corrbound::numerics;
namespace tfim = corrbound::tfim;

namespace {

ed::ChainSpec open_chain(int n, ed::ChainModel m, const Couplings& p) {
  return ed::ChainSpec{n, m, ed::Boundary::Open, p};
}

ed::ChainSpec ring(int n, ed::ChainModel m, const Couplings& p) {
  return ed::ChainSpec{n, m, ed::Boundary::Periodic, p};
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

}  // namespace

TEST_CASE("chain validation", "[ed]") {
  const Couplings p{1.0, 1.0};
  CHECK_THROWS_AS(ed::validate(open_chain(0, ed::ChainModel::Tfim, p)),
                  corrbound::InvalidN);
  CHECK_THROWS_AS(ed::validate(open_chain(13, ed::ChainModel::Tfim, p)),
                  corrbound::DimensionTooLarge);
  CHECK_THROWS_AS(ed::validate(ring(2, ed::ChainModel::Tfim, p)), corrbound::InvalidN);
  CHECK_NOTHROW(ed::validate(open_chain(1, ed::ChainModel::Tfim, p)));
  CHECK_NOTHROW(ed::validate(ring(3, ed::ChainModel::Heisenberg, p)));
}

TEST_CASE("single site and field-only spectra", "[ed]") {
  // one site, no bonds: beta H = -C sigma_z = diag(-C, +C)
  const auto h1 = ed::build_hamiltonian(open_chain(1, ed::ChainModel::Tfim, {0.7, 1.3}));
  REQUIRE(h1.rows() == 2);
  CHECK(h1(0, 0) == -1.3);
  CHECK(h1(1, 1) == 1.3);
  CHECK(h1(0, 1) == 0.0);
  CHECK(ed::ln_z_ed(open_chain(1, ed::ChainModel::Tfim, {0.7, 1.3})) ==
        Approx(num::ln_2cosh(1.3)).margin(1e-12));

  // K = 0 ring: energies -C(n_up - n_down), multiplicities binomial
  const double c = 0.9;
  auto ev = sorted_eigenvalues(
      ed::build_hamiltonian(ring(3, ed::ChainModel::Tfim, {0.0, c})));
  const std::vector<double> want{-3 * c, -c, -c, -c, c, c, c, 3 * c};
  REQUIRE(ev.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(ev[i] == Approx(want[i]).margin(1e-12));
  }
}

TEST_CASE("two-site Heisenberg chain reproduces the closed-form model", "[ed]") {
  // the two-qubit Hamiltonian is swap symmetric, so the site-order
  // convention cannot matter here
  const Couplings p{0.8, 1.4};
  const auto spec = open_chain(2, ed::ChainModel::Heisenberg, p);

  auto ev = sorted_eigenvalues(ed::build_hamiltonian(spec));
  auto want = h2::spectrum(p);
  std::sort(want.begin(), want.end());
  REQUIRE(ev.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(ev[i] == Approx(want[i]).margin(1e-12));

  const auto td = ed::thermal_density(ed::build_hamiltonian(spec));
  CHECK(td.ln_z == Approx(h2::ln_z(p)).margin(1e-10));
  const auto reference = h2::thermal_state(p);
  CHECK((td.rho.matrix() - reference.matrix()).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(ed::multiparty_mutual_info(td.rho, 2) ==
        Approx(h2::mutual_information(p)).margin(1e-9));
}

TEST_CASE("hamiltonian symmetry and thermal state basics", "[ed]") {
  const auto h = ed::build_hamiltonian(open_chain(5, ed::ChainModel::Heisenberg, {1.1, 0.4}));
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // zero Hamiltonian: maximally mixed state, ln Z = n ln 2
  const auto flat = ed::thermal_density(Eigen::MatrixXd::Zero(4, 4));
  CHECK(flat.ln_z == Approx(2.0 * num::kLn2).margin(1e-12));
  CHECK((flat.rho.matrix() - 0.25 * Eigen::MatrixXcd::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);

  Eigen::MatrixXd skew = Eigen::MatrixXd::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(ed::thermal_density(skew), std::invalid_argument);
  CHECK_THROWS_AS(ed::thermal_density(Eigen::MatrixXd::Zero(2, 3)),
                  corrbound::DimensionMismatch);

  // the thermal state commutes with its Hamiltonian
  const auto hr = ed::build_hamiltonian(ring(4, ed::ChainModel::Tfim, {1.0, 1.0}));
  const auto td = ed::thermal_density(hr);
  const Eigen::MatrixXcd hc = hr.cast<std::complex<double>>();
  CHECK((td.rho.matrix() * hc - hc * td.rho.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("parity-block partition function matches the dense route", "[ed]") {
  const Couplings p{0.9, 0.6};
  for (const auto model : {ed::ChainModel::Tfim, ed::ChainModel::Heisenberg}) {
    for (const auto spec : {open_chain(4, model, p), ring(5, model, p)}) {
      const double dense = ed::thermal_density(ed::build_hamiltonian(spec)).ln_z;
      CHECK(ed::ln_z_ed(spec) == Approx(dense).margin(1e-10));
    }
  }
}

TEST_CASE("multiparty mutual information", "[ed]") {
  // product thermal state: zero total correlation
  const auto product =
      ed::thermal_density(ed::build_hamiltonian(open_chain(3, ed::ChainModel::Tfim, {0.0, 0.7})));
  CHECK(ed::multiparty_mutual_info(product.rho, 3) <= 1e-10);
  CHECK(ed::multiparty_mutual_info(product.rho, 3) >= -1e-12);

  // deep antiferromagnetic cold limit: the two-site state is the singlet
  const auto cold =
      ed::thermal_density(ed::build_hamiltonian(open_chain(2, ed::ChainModel::Heisenberg, {10.0, 0.0})));
  CHECK(ed::multiparty_mutual_info(cold.rho, 2) == Approx(2.0 * num::kLn2).margin(1e-6));

  // ring states are translation invariant: every site reduction has the
  // same entropy, and I stays inside [0, n ln 2]
  const auto td = ed::thermal_density(ed::build_hamiltonian(ring(4, ed::ChainModel::Tfim, {1.0, 0.6})));
  const std::vector<int> dims{2, 2, 2, 2};
  const double s0 = num::von_neumann_entropy(num::partial_trace(td.rho, dims, 0));
  for (int i = 1; i < 4; ++i) {
    CHECK(num::von_neumann_entropy(num::partial_trace(td.rho, dims, i)) ==
          Approx(s0).margin(1e-10));
  }
  const double info = ed::multiparty_mutual_info(td.rho, 4);
  CHECK(info >= 0.0);
  CHECK(info <= 4.0 * num::kLn2);

  CHECK_THROWS_AS(ed::multiparty_mutual_info(product.rho, 2),
                  corrbound::DimensionMismatch);
}

TEST_CASE("relative-entropy decomposition from explicit traces", "[ed]") {
  // K = 0, s = 0: H and H_mf are the same matrix, every gap vanishes
  const auto null_terms = ed::exact_bound_terms(ring(4, ed::ChainModel::Tfim, {0.0, 1.0}), 0.0);
  CHECK(null_terms.beta_gap == Approx(0.0).margin(1e-12));
  CHECK(null_terms.relative_entropy_direct == Approx(0.0).margin(1e-10));
  CHECK(null_terms.assembled_bound() == Approx(0.0).margin(1e-10));
  CHECK(null_terms.ln_z == Approx(null_terms.ln_z_mf).margin(1e-12));

  // interacting ring with the thermodynamic-limit mean-field root: the
  // assembled bound is a true relative entropy, hence dominates the
  // multiparty mutual information
  const Couplings p{1.0, 1.0};
  const auto spec = ring(6, ed::ChainModel::Tfim, p);
  const double s = tfim::solve_s(p).principal;
  CHECK(s == Approx(0.6271832182451164).margin(1e-9));

  const auto t = ed::exact_bound_terms(spec, s);
  CHECK(t.assembled_bound() ==
        Approx(t.relative_entropy_direct).margin(1e-8));
  CHECK(t.beta_gap == Approx(t.beta_avg_hmf_under_h - t.beta_avg_h_under_h).margin(1e-12));

  const auto td = ed::thermal_density(ed::build_hamiltonian(spec));
  CHECK(t.assembled_bound() >= ed::multiparty_mutual_info(td.rho, 6) - 1e-8);
  CHECK(t.assembled_bound() >= -1e-10);

  // Gibbs variational sandwich, assembled from the same eight traces
  const double lower = t.beta_avg_h_under_h - t.beta_avg_hmf_under_h;
  const double middle = t.ln_z_mf - t.ln_z;
  const double upper = t.beta_avg_h_under_mf - t.beta_avg_hmf_under_mf;
  CHECK(lower <= middle + 1e-9);
  CHECK(middle <= upper + 1e-9);

  CHECK_THROWS_AS(ed::exact_bound_terms(ring(4, ed::ChainModel::Heisenberg, p), 0.3),
                  corrbound::UnsupportedMode);
  CHECK_THROWS_AS(ed::exact_bound_terms(spec, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("finite-size free energy approaches the integral", "[ed]") {
  const auto table = ed::convergence_check(Couplings{1.0, 1.0}, {4, 6, 8});
  REQUIRE(table.size() == 3);
  CHECK(table[0].deviation == Approx(4.329340325316e-2).margin(1e-9));
  CHECK(table[1].deviation == Approx(1.316511543976e-2).margin(1e-9));
  CHECK(table[2].deviation == Approx(4.389187888842e-3).margin(1e-9));
  CHECK(table[1].deviation < table[0].deviation);
  CHECK(table[2].deviation < table[1].deviation);

  // gapped side: already accurate at tiny rings
  const auto gapped = ed::convergence_check(Couplings{0.5, 2.0}, {4, 8});
  CHECK(gapped[0].deviation == Approx(8.293509800326e-4).margin(1e-9));
  CHECK(gapped[1].deviation < gapped[0].deviation);
  CHECK(gapped[1].deviation < 5e-3);

  // free spins: the ring value is the limit at every size
  for (const auto& row : ed::convergence_check(Couplings{0.0, 1.3}, {4, 6})) {
    CHECK(row.deviation <= 1e-10);
  }

  CHECK_THROWS_AS(ed::convergence_check(Couplings{1.0, 1.0}, {2}), corrbound::InvalidN);
}
