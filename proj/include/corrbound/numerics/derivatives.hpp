#pragma once

// Central finite-difference stencils, O(h^4).

#include <stdexcept>

namespace corrbound::numerics {

template <typename F>
double first_derivative(F&& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("first_derivative: h must be positive");
  return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

template <typename F>
double second_derivative(F&& f, double x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("second_derivative: h must be positive");
  return (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
          f(x + 2.0 * h)) /
         (12.0 * h * h);
}

}  // namespace corrbound::numerics
