#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polyharm/errors.hpp"
#include "polyharm/ring.hpp"

// Double-exponential (tanh-sinh) quadrature on (0,1).
//
// The substitution x(t) = 1/2 (1 + tanh((pi/2) sinh t)) maps the real line
// onto (0,1) with weights that decay double-exponentially, which makes the
// trapezoidal sum robust against the endpoint-degenerate power integrands
// produced by the reduced Lagrangians. Levels halve the step; the change
// between consecutive levels serves as the (conservative) error estimate.
//
// Integrand values live in a generic scalar ring, so the same pass that
// computes an energy also carries its first and second s-variations.
//
// Abscissas are clamped to [1e-9, 1 - 1e-12]: nodes fall double-exponentially
// close to the endpoints, and every integrand of this library is continuous
// there, so evaluating at the clamped point with the true weight keeps the
// tail mass while never touching an exact endpoint.

namespace polyharm {

inline constexpr double kRhoClampLo = 1e-9;
inline constexpr double kRhoClampHi = 1.0 - 1e-12;

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_level = 12;
  int min_level = 2;         // setting min = max pins a fixed, adaptivity-free depth
  bool compensated = false;  // Kahan accumulation of node contributions
};

inline constexpr int kMaxQuadLevel = 13;

template <class R>
struct QuadResult {
  R value{};
  double error_estimate = 0.0;
  int levels = 0;
};

namespace detail {

struct QuadNode {
  double x;  // abscissa in (0,1), already clamped
  double w;  // weight dx/dt, step factor not included
};

// Nodes for one refinement level: level 0 holds the integer values of t,
// level L > 0 the odd multiples of 2^-L. All levels are generated on first
// use (thread-safe magic static), so references stay valid across threads.
inline const std::vector<QuadNode>& tanh_sinh_level(int level) {
  static const auto cache = [] {
    constexpr double kPi = 3.141592653589793238462643383279503;
    constexpr double kTMax = 4.5;
    std::vector<std::vector<QuadNode>> levels;
    for (int l = 0; l <= kMaxQuadLevel; ++l) {
      std::vector<QuadNode> nodes;
      const double h = std::ldexp(1.0, -l);
      const double step = (l == 0) ? h : 2.0 * h;
      for (double t = (l == 0) ? 0.0 : h; t <= kTMax; t += step) {
        const double u = 0.5 * kPi * std::sinh(t);
        // With m = exp(-2|u|): min(x, 1-x) = m/(1+m) to full relative
        // precision, and dx/dt = pi cosh(t) m/(1+m)^2.
        const double m = std::exp(-2.0 * u);
        const double xsmall = m / (1.0 + m);
        const double w = kPi * std::cosh(t) * xsmall / (1.0 + m);
        if (w < 1e-40) break;
        nodes.push_back({std::min(1.0 - xsmall, kRhoClampHi), w});
        if (t > 0.0) nodes.push_back({std::max(xsmall, kRhoClampLo), w});
      }
      levels.push_back(std::move(nodes));
    }
    return levels;
  }();
  return cache[static_cast<size_t>(level)];
}

template <class R, class F>
R level_sum(F&& f, int level, bool compensated, double& l1) {
  R sum(0.0);
  R carry(0.0);
  for (const QuadNode& node : tanh_sinh_level(level)) {
    R term = f(node.x) * node.w;
    l1 += norm_inf(term);
    if (compensated) {
      R y = term - carry;
      R t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    } else {
      sum += term;
    }
  }
  return sum;
}

}  // namespace detail

// Integrate f : (0,1) -> R to the requested tolerance. The convergence test
// also accepts once the level difference reaches the rounding floor of the
// accumulated node magnitudes (an integral of size 1e6 cannot be refined
// past ~1e-10 in double, and demanding so would never terminate). Throws
// accuracy_error (carrying the achieved estimate) if max_level refinements
// reach neither.
template <class R, class F>
QuadResult<R> integrate_unit(F&& f, const QuadOptions& opt = {}) {
  const int max_level = std::min(opt.max_level, kMaxQuadLevel);
  const int min_level = std::max(2, std::min(opt.min_level, max_level));
  double l1 = 0.0;
  // Trapezoid value at level 0 (h = 1).
  R total = detail::level_sum<R>(f, 0, opt.compensated, l1);
  double err = norm_inf(total);
  for (int level = 1; level <= max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    double level_l1 = 0.0;
    R refined = total * 0.5 + detail::level_sum<R>(f, level, opt.compensated, level_l1) * h;
    l1 = 0.5 * l1 + level_l1 * h;
    err = norm_inf(refined - total);
    total = refined;
    const double floor = 32.0 * 2.220446049250313e-16 * l1;
    if (level >= min_level &&
        err <= std::max({opt.abs_tol, opt.rel_tol * norm_inf(total), floor}))
      return {total, err, level};
  }
  throw accuracy_error("integrate_unit: tanh-sinh did not reach tolerance", err);
}

}  // namespace polyharm
