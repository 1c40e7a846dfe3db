#pragma once

#include <algorithm>
#include <cmath>

#include "polyharm/errors.hpp"

// Scalar rings.
//
// Every formula in this library is written once against a generic scalar
// ring R. Two rings are provided:
//
//   * double          — plain evaluation;
//   * Perturbation2   — forward propagation of (value, d/ds, d^2/ds^2) at
//                       s = 0 along a one-parameter variation.
//
// A ring must support +, -, *, / among its own values and with double,
// unary minus, and the analytic functions sin, cos, sinh, cosh, sqrt and
// pow(x, double) found by ADL. scalar_value() extracts the value slot and
// norm_inf() gives the magnitude used for convergence tests.

namespace polyharm {

struct Perturbation2 {
  double v0 = 0.0;  // value at s = 0
  double v1 = 0.0;  // d/ds at s = 0
  double v2 = 0.0;  // d^2/ds^2 at s = 0

  constexpr Perturbation2() = default;
  constexpr Perturbation2(double value) : v0(value) {}  // NOLINT(google-explicit-constructor)
  constexpr Perturbation2(double value, double d1, double d2) : v0(value), v1(d1), v2(d2) {}

  constexpr Perturbation2 operator-() const { return {-v0, -v1, -v2}; }

  Perturbation2& operator+=(const Perturbation2& o) {
    v0 += o.v0;
    v1 += o.v1;
    v2 += o.v2;
    return *this;
  }
  Perturbation2& operator-=(const Perturbation2& o) {
    v0 -= o.v0;
    v1 -= o.v1;
    v2 -= o.v2;
    return *this;
  }
  Perturbation2& operator*=(const Perturbation2& o) {
    const double w0 = v0 * o.v0;
    const double w1 = v1 * o.v0 + v0 * o.v1;
    const double w2 = v2 * o.v0 + 2.0 * v1 * o.v1 + v0 * o.v2;
    v0 = w0;
    v1 = w1;
    v2 = w2;
    return *this;
  }
  Perturbation2& operator/=(const Perturbation2& o);
};

inline Perturbation2 operator+(Perturbation2 a, const Perturbation2& b) { return a += b; }
inline Perturbation2 operator-(Perturbation2 a, const Perturbation2& b) { return a -= b; }
inline Perturbation2 operator*(Perturbation2 a, const Perturbation2& b) { return a *= b; }

inline Perturbation2& Perturbation2::operator/=(const Perturbation2& o) {
  if (o.v0 == 0.0) throw singularity_error("Perturbation2: division by zero value slot");
  const double w0 = v0 / o.v0;
  const double w1 = (v1 - w0 * o.v1) / o.v0;
  const double w2 = (v2 - w0 * o.v2 - 2.0 * w1 * o.v1) / o.v0;
  v0 = w0;
  v1 = w1;
  v2 = w2;
  return *this;
}

inline Perturbation2 operator/(Perturbation2 a, const Perturbation2& b) { return a /= b; }

inline Perturbation2 operator*(Perturbation2 a, double c) { return {a.v0 * c, a.v1 * c, a.v2 * c}; }
inline Perturbation2 operator*(double c, Perturbation2 a) { return a * c; }
inline Perturbation2 operator/(Perturbation2 a, double c) { return {a.v0 / c, a.v1 / c, a.v2 / c}; }
inline Perturbation2 operator/(double c, const Perturbation2& b) { return Perturbation2(c) / b; }
inline Perturbation2 operator+(Perturbation2 a, double c) { return {a.v0 + c, a.v1, a.v2}; }
inline Perturbation2 operator+(double c, Perturbation2 a) { return a + c; }
inline Perturbation2 operator-(Perturbation2 a, double c) { return {a.v0 - c, a.v1, a.v2}; }
inline Perturbation2 operator-(double c, Perturbation2 a) { return {c - a.v0, -a.v1, -a.v2}; }

inline bool operator==(const Perturbation2& a, const Perturbation2& b) {
  return a.v0 == b.v0 && a.v1 == b.v1 && a.v2 == b.v2;
}

// Chain rule through the elementary functions: for x(s), the slots of f(x)
// are f(x0), f'(x0) x1 and f''(x0) x1^2 + f'(x0) x2.
inline Perturbation2 sin(const Perturbation2& x) {
  const double s = std::sin(x.v0), c = std::cos(x.v0);
  return {s, c * x.v1, c * x.v2 - s * x.v1 * x.v1};
}
inline Perturbation2 cos(const Perturbation2& x) {
  const double s = std::sin(x.v0), c = std::cos(x.v0);
  return {c, -s * x.v1, -s * x.v2 - c * x.v1 * x.v1};
}
inline Perturbation2 sinh(const Perturbation2& x) {
  const double s = std::sinh(x.v0), c = std::cosh(x.v0);
  return {s, c * x.v1, c * x.v2 + s * x.v1 * x.v1};
}
inline Perturbation2 cosh(const Perturbation2& x) {
  const double s = std::sinh(x.v0), c = std::cosh(x.v0);
  return {c, s * x.v1, s * x.v2 + c * x.v1 * x.v1};
}
inline Perturbation2 sqrt(const Perturbation2& x) {
  if (x.v0 <= 0.0) throw domain_error("Perturbation2: sqrt of nonpositive value slot");
  const double r = std::sqrt(x.v0);
  const double d1 = x.v1 / (2.0 * r);
  return {r, d1, (x.v2 - 2.0 * d1 * d1) / (2.0 * r)};
}
inline Perturbation2 pow(const Perturbation2& x, double e) {
  const double p = std::pow(x.v0, e);
  const double dp = e * std::pow(x.v0, e - 1.0);
  const double ddp = e * (e - 1.0) * std::pow(x.v0, e - 2.0);
  return {p, dp * x.v1, ddp * x.v1 * x.v1 + dp * x.v2};
}

inline double scalar_value(double x) { return x; }
inline double scalar_value(long double x) { return static_cast<double>(x); }
inline double scalar_value(const Perturbation2& x) { return x.v0; }

inline double norm_inf(double x) { return std::fabs(x); }
inline double norm_inf(long double x) { return static_cast<double>(std::fabs(x)); }
inline double norm_inf(const Perturbation2& x) {
  return std::max({std::fabs(x.v0), std::fabs(x.v1), std::fabs(x.v2)});
}

}  // namespace polyharm
