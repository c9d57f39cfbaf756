#pragma once

// Dimensionless couplings used by every model surface.
//
// With k_B = 1 the physical parameters (J, B, T) enter only through
//   K = J / (2T)   (exchange coupling per thermal energy)
//   C = B / T      (field per thermal energy)
// and all Hamiltonian-like quantities are expressed in beta-energy units,
// i.e. beta*H is the dimensionless operator.

#include <cmath>
#include <stdexcept>

namespace corrbound {

struct Couplings {
  double K = 0.0;
  double C = 0.0;
};

// Physical quadrant accepted at the public entry points (config, CLI).
// Internal evaluations may extend to negative C, e.g. derivative stencils
// and odd-symmetry checks, so the struct itself stays unvalidated.
inline Couplings checked_couplings(double K, double C) {
  if (!(std::isfinite(K) && std::isfinite(C))) {
    throw std::invalid_argument("couplings must be finite");
  }
  if (K < 0.0 || C < 0.0) {
    throw std::invalid_argument("couplings must satisfy K >= 0 and C >= 0");
  }
  return Couplings{K, C};
}

inline Couplings couplings_from_physical(double J, double B, double T) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("temperature must be positive");
  }
  return checked_couplings(J / (2.0 * T), B / T);
}

}  // namespace corrbound
