#pragma once

// Single qubit -> classical Ising chain correspondence.
//
// For H = [[E, -Delta], [-Delta, -E]] the entries of 1 - beta H / N match a
// classical transfer matrix
//
//   T_{u,u'} = A exp(B u u' + (h/2)(u + u')),   u, u' in {+1, -1},
//
// with A = (beta Delta/N)^{1/2} (1 - beta^2 E^2/N^2)^{1/4},
//      B = (1/4) ln((N^2 - beta^2 E^2)/(beta^2 Delta^2)),
//      h = (1/2) ln((N - beta E)/(N + beta E)).
//
// tr T^N is then a classical partition function whose O(1/N) distance from
// tr e^{-beta H} is the Trotter error quantified here. Requires Delta > 0
// and N > beta|E| so the logs stay real.

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "corrbound/errors.hpp"

namespace corrbound::qc {

struct QubitHamiltonian {
  double e = 0.0;      // diagonal energy, units of 1/beta
  double delta = 1.0;  // off-diagonal coupling, > 0
};

struct ClassicalMapCoefficients {
  double a = 0.0;
  double b_cl = 0.0;
  double h = 0.0;
  int n = 0;
  double beta = 0.0;
};

inline ClassicalMapCoefficients coefficients(const QubitHamiltonian& ham,
                                             double beta, int n) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(ham.delta > 0.0)) {
    throw NonPositiveDelta("the map needs a positive off-diagonal coupling");
  }
  const double be = beta * ham.e;
  if (!(n > std::fabs(be))) {
    throw TrotterDomainError("need N > beta|E| for real coefficients");
  }
  const double nn = static_cast<double>(n);
  ClassicalMapCoefficients c;
  c.n = n;
  c.beta = beta;
  c.a = std::sqrt(beta * ham.delta / nn) *
        std::pow(1.0 - be * be / (nn * nn), 0.25);
  c.b_cl = 0.25 * std::log((nn * nn - be * be) / (beta * beta * ham.delta * ham.delta));
  c.h = 0.5 * std::log((nn - be) / (nn + be));
  return c;
}

// Row/column 0 is u = +1, row/column 1 is u = -1; symmetric and positive.
inline Eigen::Matrix2d transfer_matrix(const ClassicalMapCoefficients& c) {
  Eigen::Matrix2d t;
  const double spins[2] = {1.0, -1.0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      t(i, j) = c.a * std::exp(c.b_cl * spins[i] * spins[j] +
                               0.5 * c.h * (spins[i] + spins[j]));
    }
  }
  return t;
}

// tr T^N by the transfer-matrix eigenvalues (periodic chain).
inline double classical_partition(const ClassicalMapCoefficients& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(transfer_matrix(c));
  return std::pow(es.eigenvalues()(0), c.n) + std::pow(es.eigenvalues()(1), c.n);
}

// tr e^{-beta H} = 2 cosh(beta sqrt(E^2 + Delta^2))
inline double quantum_partition(const QubitHamiltonian& ham, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  return 2.0 * std::cosh(beta * std::hypot(ham.e, ham.delta));
}

// |tr T^N - tr e^{-beta H}|, the O(1/N) discretization error.
inline double trotter_error(const QubitHamiltonian& ham, double beta, int n) {
  return std::fabs(classical_partition(coefficients(ham, beta, n)) -
                   quantum_partition(ham, beta));
}

}  // namespace corrbound::qc
