#pragma once

// Scalar root finding: bracketed bisection with optional Newton polish,
// damped fixed-point iteration, and a sign-change grid scan used by the
// mean-field solvers.

#include <algorithm>
#include <cmath>
#include <vector>

#include "corrbound/errors.hpp"

namespace corrbound::numerics {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;  // f(root), or g(root) - root for fixed_point
  int iterations = 0;
  bool converged = false;
};

// Bisection to bracket width <= tol, then (optionally) Newton steps with a
// numeric derivative, clamped to the final bracket so the polish can move
// the root by at most tol. BadBracket if the endpoints do not straddle a
// sign change; an exact zero at an endpoint is returned immediately.
template <typename F>
RootResult solve_bracketed(F&& f, double lo, double hi, double tol = 1e-12,
                           bool newton_polish = true) {
  if (!(lo < hi)) throw BadBracket("solve_bracketed: requires lo < hi");
  double fa = f(lo);
  double fb = f(hi);
  if (fa == 0.0) return {lo, 0.0, 0, true};
  if (fb == 0.0) return {hi, 0.0, 0, true};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BadBracket("solve_bracketed: f(lo) and f(hi) have the same sign");
  }

  RootResult out;
  double a = lo, b = hi;
  while (b - a > tol && out.iterations < 200) {
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;  // bracket at rounding resolution
    const double fm = f(m);
    ++out.iterations;
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  double x = 0.5 * (a + b);
  double fx = f(x);

  if (newton_polish) {
    for (int i = 0; i < 8 && fx != 0.0; ++i) {
      const double h = std::max(1e-7, 1e-7 * std::fabs(x));
      const double d = (f(x + h) - f(x - h)) / (2.0 * h);
      if (d == 0.0 || !std::isfinite(d)) break;
      double xn = x - fx / d;
      if (!(xn >= a && xn <= b)) break;  // keep the bisection guarantee
      const double fn = f(xn);
      if (std::fabs(fn) >= std::fabs(fx)) break;
      x = xn;
      fx = fn;
      ++out.iterations;
    }
  }

  out.root = x;
  out.residual = fx;
  out.converged = true;
  return out;
}

// x <- (1 - damping) x + damping g(x) until |g(x) - x| <= tol.
// Non-convergence is reported through the flag, not an exception, so
// callers can fall back to scan-based solvers.
template <typename G>
RootResult fixed_point(G&& g, double x0, double damping = 1.0, double tol = 1e-12,
                       int max_iter = 500) {
  RootResult out;
  double x = x0;
  double r = g(x) - x;
  while (out.iterations < max_iter) {
    if (std::fabs(r) <= tol) {
      out.converged = true;
      break;
    }
    x += damping * r;
    r = g(x) - x;
    ++out.iterations;
  }
  out.root = x;
  out.residual = r;
  return out;
}

// Uniform scan over [lo, hi]; every sign change is bisected and the root is
// kept only when |f(root)| <= validation_tol. The validation filter drops
// brackets produced by jump discontinuities rather than genuine zeros.
// Exact zeros at grid points are recorded directly. Roots closer than
// merge_tol are deduplicated. Results are sorted ascending.
template <typename F>
std::vector<RootResult> find_roots_scan(F&& f, double lo, double hi, int subintervals,
                                        double validation_tol = 1e-10,
                                        double bisect_tol = 1e-13,
                                        double merge_tol = 1e-8) {
  std::vector<RootResult> roots;
  if (subintervals < 1 || !(hi > lo)) return roots;
  std::vector<double> xs(static_cast<size_t>(subintervals) + 1);
  std::vector<double> fs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / subintervals;
    fs[i] = f(xs[i]);
  }
  auto push_unique = [&](RootResult r) {
    for (const auto& o : roots) {
      if (std::fabs(o.root - r.root) < merge_tol) return;
    }
    roots.push_back(r);
  };
  for (size_t i = 0; i < xs.size(); ++i) {
    if (fs[i] == 0.0) push_unique({xs[i], 0.0, 0, true});
  }
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (fs[i] == 0.0 || fs[i + 1] == 0.0) continue;
    if ((fs[i] > 0.0) != (fs[i + 1] > 0.0)) {
      RootResult r = solve_bracketed(f, xs[i], xs[i + 1], bisect_tol);
      if (std::fabs(r.residual) <= validation_tol) push_unique(r);
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const RootResult& a, const RootResult& b) { return a.root < b.root; });
  return roots;
}

}  // namespace corrbound::numerics
