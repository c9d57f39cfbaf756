#pragma once

// Adaptive Gauss-Legendre quadrature.
//
// Panels are integrated with a 15-point Gauss-Legendre rule and bisected
// until the Richardson-style estimate |whole - (left + right)| meets the
// width-proportional share of the tolerance. Gauss nodes are interior, so
// integrands are never evaluated at panel endpoints; removable endpoint
// singularities (e.g. the dispersion kink at omega = 0 when K = C) need no
// special casing. The node budget bounds work on pathological integrands.

#include <cmath>
#include <utility>
#include <vector>

#include "corrbound/errors.hpp"

namespace corrbound::numerics {

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;  // sum of accepted panel estimates, <= tol on success
  int nodes_used = 0;      // integrand evaluations
};

namespace detail {

// 15-point Gauss-Legendre abscissae/weights on [-1, 1] (positive half).
inline constexpr double kGlNode[8] = {
    0.0,
    0.20119409399743452,
    0.39415134707756337,
    0.57097217260853885,
    0.72441773136017005,
    0.84820658341042722,
    0.93727339240070590,
    0.98799251802048543,
};
inline constexpr double kGlWeight[8] = {
    0.20257824192556127,
    0.19843148532711158,
    0.18616100001556221,
    0.16626920581699393,
    0.13957067792615431,
    0.10715922046717194,
    0.07036604748810812,
    0.03075324199611727,
};

template <typename F>
double gl15(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = kGlWeight[0] * f(mid);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGlNode[i];
    acc += kGlWeight[i] * (f(mid - dx) + f(mid + dx));
  }
  return half * acc;
}

}  // namespace detail

// Integrates f over [a, b] with deterministic left-to-right panel traversal.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double tol = 1e-10,
                           int max_nodes = 1 << 16) {
  if (!(b >= a)) throw BadBracket("integrate: requires b >= a");
  QuadratureResult out;
  if (a == b) return out;

  struct Panel {
    double a, b, whole;
  };
  std::vector<Panel> stack;
  out.nodes_used = 15;
  stack.push_back({a, b, detail::gl15(f, a, b)});
  const double range = b - a;

  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      // Panel width at rounding resolution; cannot refine further.
      out.value += p.whole;
      continue;
    }
    out.nodes_used += 30;
    if (out.nodes_used > max_nodes) {
      throw NonConvergence("integrate: node budget exhausted before tolerance");
    }
    const double left = detail::gl15(f, p.a, m);
    const double right = detail::gl15(f, m, p.b);
    const double halves = left + right;
    const double err = std::fabs(halves - p.whole);
    if (err <= tol * ((p.b - p.a) / range)) {
      out.value += halves;
      out.est_error += err;
    } else {
      // Right pushed first so accepted panels accumulate left to right.
      stack.push_back({m, p.b, right});
      stack.push_back({p.a, m, left});
    }
  }
  return out;
}

// All dispersion integrals in the models run over [0, pi].
template <typename F>
QuadratureResult integrate_0_pi(F&& f, double tol = 1e-10, int max_nodes = 1 << 16) {
  return integrate(std::forward<F>(f), 0.0, 3.14159265358979323846264338327950288,
                   tol, max_nodes);
}

}  // namespace corrbound::numerics
