#pragma once

// Error taxonomy shared across the library. Everything derives from
// corrbound::Error so callers can catch the whole family at once; the CLI
// maps Error to exit code 1 and argument/usage problems to exit code 2.

#include <stdexcept>
#include <string>

namespace corrbound {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- numerics ----

// Tolerance not reached within the node/iteration budget.
struct NonConvergence : Error {
  using Error::Error;
};

// solve_bracketed endpoints do not straddle a sign change.
struct BadBracket : Error {
  using Error::Error;
};

// Matrix fails the density-matrix invariants (hermiticity, unit trace,
// positive semidefiniteness) beyond tolerance.
struct NotDensityMatrix : Error {
  using Error::Error;
};

// Operands of an entropy/trace operation have incompatible shapes.
struct DimensionMismatch : Error {
  using Error::Error;
};

// ---- models ----

// The requested averaging mode is not computable for this model.
struct UnsupportedMode : Error {
  using Error::Error;
};

// Chain size out of the exact-diagonalization domain.
struct InvalidN : Error {
  using Error::Error;
};
struct DimensionTooLarge : Error {
  using Error::Error;
};

// Closed-form cross-check disagreed with the independent evaluation route.
struct InternalInconsistency : Error {
  using Error::Error;
};

// ---- quantum-to-classical map ----

// Requires N > beta*|E| so the log arguments stay positive.
struct TrotterDomainError : Error {
  using Error::Error;
};
struct NonPositiveDelta : Error {
  using Error::Error;
};

// ---- config / output ----

struct ParseError : Error {
  ParseError(const std::string& msg, int line)
      : Error("config line " + std::to_string(line) + ": " + msg), line_number(line) {}
  int line_number;
};

// (K, C) and (J, B, T) both given but disagree.
struct ConversionError : Error {
  using Error::Error;
};

// Sweep records do not form a complete K x C grid.
struct NonRectangularGrid : Error {
  using Error::Error;
};

}  // namespace corrbound
