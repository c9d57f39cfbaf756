// Command-line front end for the correlation-bound library.
//
// Subcommands: bound-sweep, mf-solve, ed-check, qcmap-check, critical-k.
// Exit codes: 0 success, 1 computation failure, 2 usage/config problem.

#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrbound/bound_core.hpp"
#include "corrbound/couplings.hpp"
#include "corrbound/ed_oracle.hpp"
#include "corrbound/errors.hpp"
#include "corrbound/heisenberg2.hpp"
#include "corrbound/qc_map.hpp"
#include "corrbound/svg.hpp"
#include "corrbound/sweep.hpp"
#include "corrbound/tfim.hpp"
#include "corrbound/version.hpp"

namespace {

using corrbound::sweep::detail::fmt;

int run_bound_sweep(const std::string& config_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read config '" << config_path << "'\n";
    return 2;
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const auto cfg = corrbound::sweep::parse_config(text);
  const auto records = corrbound::sweep::run_sweep(cfg);
  corrbound::sweep::write_csv(records, cfg.output_path);
  std::cout << "wrote " << cfg.output_path << " (" << records.size() << " rows)\n";
  if (cfg.plot) {
    corrbound::svg::emit_plot(records, cfg.plot_quantity, cfg.plot_path);
    std::cout << "wrote " << cfg.plot_path << "\n";
  }
  return 0;
}

int run_mf_solve(const std::string& model, double k, double c) {
  const auto p = corrbound::checked_couplings(k, c);
  std::cout << "model=" << model << " K=" << fmt(p.K) << " C=" << fmt(p.C) << "\n";
  auto print_solution = [](const corrbound::MeanFieldSolution& sol) {
    std::cout << "branches:";
    for (double b : sol.branches) std::cout << ' ' << fmt(b);
    std::cout << "\nresiduals:";
    for (double r : sol.residuals) std::cout << ' ' << fmt(r);
    std::cout << "\nprincipal=" << fmt(sol.principal)
              << "\nconverged=" << (sol.converged ? "true" : "false")
              << "\nout_of_range=" << (sol.out_of_range_detected ? "true" : "false")
              << "\n";
  };
  if (model == "tfim") {
    print_solution(corrbound::tfim::solve_s(p));
  } else if (model == "classical_ising") {
    print_solution(corrbound::classical_ising_mf_solve(p));
  } else if (model == "heisenberg2") {
    using corrbound::AverageMode;
    std::cout << "sz_exact=" << fmt(corrbound::heisenberg2::sz_mean(p, AverageMode::Exact))
              << "\nsz_paper_faithful="
              << fmt(corrbound::heisenberg2::sz_mean(p, AverageMode::PaperFaithful))
              << "\nsz_self_consistent="
              << fmt(corrbound::heisenberg2::sz_mean(p, AverageMode::SelfConsistent))
              << "\n";
  } else {
    std::cerr << "unknown model '" << model << "'\n";
    return 2;
  }
  return 0;
}

int run_ed_check(int n, const std::string& model, double k, double c) {
  const auto p = corrbound::checked_couplings(k, c);
  namespace ed = corrbound::ed;
  const ed::Boundary boundary = n >= 3 ? ed::Boundary::Periodic : ed::Boundary::Open;

  if (model == "tfim") {
    const ed::ChainSpec spec{n, ed::ChainModel::Tfim, boundary, p};
    const double s = corrbound::tfim::solve_s(p).principal;
    const ed::BoundTerms terms = ed::exact_bound_terms(spec, s);
    const auto rho = ed::thermal_density(ed::build_hamiltonian(spec)).rho;
    std::cout << "n=" << n << " model=tfim K=" << fmt(p.K) << " C=" << fmt(p.C)
              << " s=" << fmt(s) << "\n"
              << "identity_residual="
              << fmt(std::fabs(terms.assembled_bound() - terms.relative_entropy_direct))
              << "\nmutual_info=" << fmt(ed::multiparty_mutual_info(rho, n))
              << "\nbound=" << fmt(terms.assembled_bound()) << "\n";
    return 0;
  }
  if (model == "heisenberg") {
    if (n != 2) {
      std::cerr << "heisenberg ed-check is defined for --n 2 only\n";
      return 2;
    }
    namespace h2 = corrbound::heisenberg2;
    const auto report = h2::bound(p, corrbound::AverageMode::Exact);
    const auto rho = h2::thermal_state(p);
    const auto rho_mf = h2::mf_state(p, report.s);
    const double rel = corrbound::numerics::relative_entropy(rho, rho_mf);
    std::cout << "n=2 model=heisenberg K=" << fmt(p.K) << " C=" << fmt(p.C)
              << " s=" << fmt(report.s) << "\n"
              << "identity_residual=" << fmt(std::fabs(report.bound - rel))
              << "\nmutual_info=" << fmt(h2::mutual_information(p))
              << "\nbound=" << fmt(report.bound) << "\n";
    return 0;
  }
  std::cerr << "unknown model '" << model << "' (want tfim or heisenberg)\n";
  return 2;
}

int run_qcmap_check(double e, double delta, double beta, std::vector<int> ns) {
  if (ns.empty()) ns = {50, 100, 200};
  const corrbound::qc::QubitHamiltonian ham{e, delta};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int n : ns) {
    const double err = corrbound::qc::trotter_error(ham, beta, n);
    const double scaled = err * n;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
    std::cout << "n=" << n << " error=" << fmt(err) << " error_x_n=" << fmt(scaled)
              << "\n";
  }
  std::cout << "quantum_partition=" << fmt(corrbound::qc::quantum_partition(ham, beta))
            << "\nerror_x_n_spread=" << fmt(lo > 0.0 ? hi / lo : 0.0) << "\n";
  return 0;
}

int run_critical_k(double tol) {
  std::cout << "K_c=" << fmt(corrbound::tfim::critical_k_at_zero_field(tol))
            << " tol=" << fmt(tol) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds on thermal correlations in spin models"};
  app.set_version_flag("--version", std::string("corrbound ") + corrbound::kVersion);
  app.require_subcommand(0, 1);

  std::string config_path;
  auto* sweep_cmd = app.add_subcommand("bound-sweep",
                                       "run a (K, C) grid sweep from a config file");
  sweep_cmd->add_option("config", config_path, "sweep config file")->required();

  std::string mf_model = "tfim";
  double mf_k = 0.0, mf_c = 0.0;
  auto* mf_cmd = app.add_subcommand("mf-solve",
                                    "solve a mean-field self-consistency equation");
  mf_cmd->add_option("--model", mf_model, "tfim | classical_ising | heisenberg2");
  mf_cmd->add_option("--K", mf_k, "dimensionless coupling J/2T")->required();
  mf_cmd->add_option("--C", mf_c, "dimensionless field B/T")->required();

  int ed_n = 4;
  std::string ed_model = "tfim";
  double ed_k = 1.0, ed_c = 1.0;
  auto* ed_cmd = app.add_subcommand(
      "ed-check", "exact-diagonalization check of the relative-entropy identity");
  ed_cmd->add_option("--n", ed_n, "chain length (<= 12)")->required();
  ed_cmd->add_option("--model", ed_model, "tfim | heisenberg");
  ed_cmd->add_option("--K", ed_k, "dimensionless coupling")->required();
  ed_cmd->add_option("--C", ed_c, "dimensionless field")->required();

  double qc_e = 0.0, qc_delta = 1.0, qc_beta = 1.0;
  std::vector<int> qc_ns;
  auto* qc_cmd = app.add_subcommand(
      "qcmap-check", "quantum to classical transfer-matrix error scaling");
  qc_cmd->add_option("--E", qc_e, "diagonal energy");
  qc_cmd->add_option("--delta", qc_delta, "off-diagonal coupling (> 0)");
  qc_cmd->add_option("--beta", qc_beta, "inverse temperature");
  qc_cmd->add_option("--n-list", qc_ns, "Trotter slice counts")->delimiter(',');

  double kc_tol = 1e-4;
  auto* kc_cmd = app.add_subcommand(
      "critical-k", "smallest K with a nonzero mean-field branch at C = 0");
  kc_cmd->add_option("--tol", kc_tol, "bisection tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sweep_cmd) return run_bound_sweep(config_path);
    if (*mf_cmd) return run_mf_solve(mf_model, mf_k, mf_c);
    if (*ed_cmd) return run_ed_check(ed_n, ed_model, ed_k, ed_c);
    if (*qc_cmd) return run_qcmap_check(qc_e, qc_delta, qc_beta, qc_ns);
    if (*kc_cmd) return run_critical_k(kc_tol);
    std::cerr << app.help();
    return 2;
  } catch (const corrbound::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const corrbound::ConversionError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const corrbound::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
