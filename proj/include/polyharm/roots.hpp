#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "polyharm/errors.hpp"

// One-dimensional root location: Brent refinement inside a bracket, and
// closed-form real roots of quadratics and cubics (Cardano / trigonometric
// branch) polished by a couple of Newton steps on the original coefficients.

namespace polyharm {

// Classic Brent-Dekker. Requires fa and fb of opposite sign (or one of them
// zero); returns the abscissa once the bracket shrinks below xtol.
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb, double xtol,
                  int max_iter = 128) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw domain_error("brent_root: endpoints do not bracket");
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc, rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

namespace detail {

inline double horner(const std::vector<double>& coeffs_desc, double x) {
  double v = 0.0;
  for (double c : coeffs_desc) v = v * x + c;
  return v;
}

inline double horner_deriv(const std::vector<double>& coeffs_desc, double x) {
  double v = 0.0;
  const int deg = static_cast<int>(coeffs_desc.size()) - 1;
  for (int i = 0; i < deg; ++i) v = v * x + coeffs_desc[static_cast<size_t>(i)] * (deg - i);
  return v;
}

inline double polish(const std::vector<double>& coeffs_desc, double x) {
  for (int i = 0; i < 3; ++i) {
    const double fp = horner_deriv(coeffs_desc, x);
    if (fp == 0.0) break;
    const double step = horner(coeffs_desc, x) / fp;
    if (!std::isfinite(step)) break;
    x -= step;
  }
  return x;
}

}  // namespace detail

// Real roots of a x^2 + b x + c, in increasing order. Degenerate leading
// coefficients fall back to the linear case.
inline std::vector<double> real_roots_quadratic(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-b / (2.0 * a)};
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> roots{q / a, c / q};
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Real roots of a x^3 + b x^2 + c x + d, in increasing order.
inline std::vector<double> real_roots_cubic(double a, double b, double c, double d) {
  if (a == 0.0) return real_roots_quadratic(b, c, d);
  // Depressed form t^3 + p2 t + q2 with x = t - b/(3a).
  const double shift = b / (3.0 * a);
  const double p2 = (3.0 * a * c - b * b) / (3.0 * a * a);
  const double q2 = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
  const std::vector<double> coeffs{a, b, c, d};
  std::vector<double> roots;
  const double disc = (q2 * q2 / 4.0) + (p2 * p2 * p2 / 27.0);
  if (disc > 0.0) {
    // One real root (Cardano).
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q2 / 2.0 + s);
    const double v = std::cbrt(-q2 / 2.0 - s);
    roots.push_back(u + v - shift);
  } else if (p2 == 0.0 && q2 == 0.0) {
    roots.push_back(-shift);
  } else {
    // Three real roots (trigonometric branch).
    const double r = std::sqrt(-p2 * p2 * p2 / 27.0);
    double arg = -q2 / (2.0 * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg);
    const double m = 2.0 * std::sqrt(-p2 / 3.0);
    for (int k = 0; k < 3; ++k)
      roots.push_back(m * std::cos((phi + 2.0 * 3.141592653589793 * k) / 3.0) - shift);
  }
  for (double& x : roots) x = detail::polish(coeffs, x);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace polyharm
