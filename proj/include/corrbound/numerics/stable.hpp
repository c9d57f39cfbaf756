#pragma once

// Numerically stable scalar helpers shared by the model formulas.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace corrbound::numerics {

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

// ln cosh(x) without overflow: |x| - ln 2 + log1p(e^{-2|x|}).
inline double ln_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

// ln(2 cosh(x)) = |x| + log1p(e^{-2|x|}).
inline double ln_2cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

// tanh(x)/x with the removable singularity at x = 0 filled by its series.
inline double tanhc(double x) {
  const double a = std::fabs(x);
  if (a < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(x) / x;
}

// ln sum_i e^{x_i}, shifted by the maximum so large arguments cannot overflow.
inline double logsumexp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace corrbound::numerics
