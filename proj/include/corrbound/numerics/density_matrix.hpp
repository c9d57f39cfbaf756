#pragma once

// Dense density matrices and the entropy functionals on them.
//
// Entropies are in nats. A DensityMatrix can carry its spectral data
// (eigenvectors plus log-populations): states assembled from a known
// thermal spectrum keep exact logarithms even where the populations
// underflow the 1e-12 eigenvalue clip, which is what makes the
// relative-entropy identity checks hold at strong coupling. Matrices
// without spectral provenance are eigendecomposed on demand and clipped.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "corrbound/errors.hpp"

namespace corrbound::numerics {

inline constexpr double kEigClip = 1e-12;          // support threshold for raw spectra
inline constexpr double kSupportWeightTol = 1e-9;  // tolerated weight on a null space

class DensityMatrix {
 public:
  // Validates hermiticity (max-norm 1e-12), unit trace (1e-10) and positive
  // semidefiniteness (eigenvalues >= -1e-10). Throws NotDensityMatrix.
  static DensityMatrix checked(Eigen::MatrixXcd m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw NotDensityMatrix("density matrix must be square and non-empty");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw NotDensityMatrix("matrix is not Hermitian within tolerance");
    }
    const std::complex<double> tr = m.trace();
    if (std::fabs(tr.real() - 1.0) > 1e-10 || std::fabs(tr.imag()) > 1e-12) {
      throw NotDensityMatrix("trace differs from 1 beyond tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.eigenvalues().minCoeff() < -1e-10) {
      throw NotDensityMatrix("matrix has a negative eigenvalue beyond tolerance");
    }
    DensityMatrix dm;
    dm.mat_ = std::move(m);
    dm.evecs_ = es.eigenvectors();
    dm.log_populations_.resize(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = es.eigenvalues()(i);
      dm.log_populations_(i) = lam > 0.0 ? std::log(lam)
                                         : -std::numeric_limits<double>::infinity();
    }
    return dm;
  }

  // Trusted construction from an orthonormal eigenbasis and log-populations
  // (typically -beta*E_i - ln Z). Only the unit trace is re-verified; the
  // caller guarantees orthonormality.
  static DensityMatrix from_log_spectrum(Eigen::MatrixXcd evecs,
                                         Eigen::VectorXd log_populations) {
    if (evecs.rows() != evecs.cols() || evecs.rows() != log_populations.size()) {
      throw DimensionMismatch("from_log_spectrum: eigensystem shape mismatch");
    }
    double trace = 0.0;
    for (Eigen::Index i = 0; i < log_populations.size(); ++i) {
      trace += std::exp(log_populations(i));
    }
    if (std::fabs(trace - 1.0) > 1e-10) {
      throw NotDensityMatrix("log-populations do not sum to 1 within tolerance");
    }
    DensityMatrix dm;
    dm.mat_ = evecs * log_populations.array().exp().matrix().asDiagonal() *
              evecs.adjoint();
    dm.evecs_ = std::move(evecs);
    dm.log_populations_ = std::move(log_populations);
    return dm;
  }

  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }
  const Eigen::VectorXd& log_populations() const { return log_populations_; }

  Eigen::VectorXd eigenvalues() const {
    return log_populations_.array().exp().matrix();
  }

 private:
  DensityMatrix() = default;
  Eigen::MatrixXcd mat_;
  Eigen::MatrixXcd evecs_;
  Eigen::VectorXd log_populations_;  // -inf marks a clipped/null direction
};

// S(rho) = -sum_i p_i ln p_i in nats; clipped directions contribute zero.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.log_populations().size(); ++i) {
    const double lp = rho.log_populations()(i);
    if (!std::isfinite(lp)) continue;
    s -= std::exp(lp) * lp;
  }
  return s;
}

// S(sigma || rho) = tr sigma ln sigma - tr sigma ln rho.
//
// If sigma puts more than kSupportWeightTol weight on a direction where
// rho has no support (log-population -inf, i.e. eigenvalue at/below the
// clip), the divergence is infinite and +inf is returned as a sentinel.
inline double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) {
    throw DimensionMismatch("relative_entropy: operands differ in dimension");
  }
  double t1 = 0.0;  // tr sigma ln sigma
  for (Eigen::Index i = 0; i < sigma.log_populations().size(); ++i) {
    const double lp = sigma.log_populations()(i);
    if (!std::isfinite(lp)) continue;
    t1 += std::exp(lp) * lp;
  }
  double t2 = 0.0;  // tr sigma ln rho
  const Eigen::MatrixXcd overlap = rho.eigenvectors().adjoint() * sigma.matrix() *
                                   rho.eigenvectors();
  for (Eigen::Index j = 0; j < rho.log_populations().size(); ++j) {
    const double w = std::max(overlap(j, j).real(), 0.0);
    const double lp = rho.log_populations()(j);
    if (!std::isfinite(lp)) {
      if (w > kSupportWeightTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    t2 += w * lp;
  }
  return t1 - t2;
}

// Traces out every factor except dims[keep]. dims are listed left to right
// in tensor-product order; their product must equal the matrix dimension.
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<int>& dims, int keep) {
  Eigen::Index prod = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("partial_trace: factor dimensions must be >= 1");
    prod *= d;
  }
  if (prod != rho.dim()) {
    throw DimensionMismatch("partial_trace: factor dimensions do not multiply to dim");
  }
  if (keep < 0 || keep >= static_cast<int>(dims.size())) {
    throw DimensionMismatch("partial_trace: keep index out of range");
  }
  Eigen::Index left = 1, right = 1;
  for (int i = 0; i < keep; ++i) left *= dims[i];
  for (size_t i = keep + 1; i < dims.size(); ++i) right *= dims[i];
  const Eigen::Index d = dims[keep];

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  const Eigen::MatrixXcd& m = rho.matrix();
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index kp = 0; kp < d; ++kp) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index l = 0; l < left; ++l) {
        const Eigen::Index rowBase = (l * d + k) * right;
        const Eigen::Index colBase = (l * d + kp) * right;
        for (Eigen::Index r = 0; r < right; ++r) {
          acc += m(rowBase + r, colBase + r);
        }
      }
      out(k, kp) = acc;
    }
  }
  // Hermitize against rounding before validation.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::checked(std::move(out));
}

}  // namespace corrbound::numerics
