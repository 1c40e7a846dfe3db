#pragma once

#include <array>
#include <utility>

#include "polyharm/errors.hpp"
#include "polyharm/ring.hpp"

// Truncated Taylor (jet) arithmetic in the radial variable.
//
// Convention (the single place it is documented): a Jet of order K stores
// the RAW derivatives of a quantity x at the base point,
//
//     jet[i] = d^i x / d rho^i   evaluated at rho0,   i = 0..K,
//
// NOT the Taylor coefficients x^(i)/i!. The Lagrangians of this library are
// written in raw derivatives, so this convention avoids factorial
// bookkeeping everywhere downstream. Binary operations therefore carry
// binomial weights (Leibniz rule). Arithmetic is closed at a fixed order:
// coefficients beyond K are discarded and never read.
//
// Entries live in a generic scalar ring (see ring.hpp), so a jet in rho may
// carry second-order perturbation data in the variation parameter s.

namespace polyharm {

inline constexpr int kMaxJetOrder = 12;

namespace detail {
// Pascal's triangle through kMaxJetOrder.
inline constexpr auto kBinom = [] {
  std::array<std::array<double, kMaxJetOrder + 1>, kMaxJetOrder + 1> b{};
  for (int i = 0; i <= kMaxJetOrder; ++i) {
    b[i][0] = 1.0;
    for (int j = 1; j <= i; ++j)
      b[i][j] = b[i - 1][j - 1] + (j <= i - 1 ? b[i - 1][j] : 0.0);
  }
  return b;
}();
}  // namespace detail

template <class R>
class Jet {
 public:
  Jet() { d_.fill(R(0.0)); }
  explicit Jet(int order) : order_(check_order(order)) { d_.fill(R(0.0)); }

  static Jet constant(int order, R value) {
    Jet j(order);
    j.d_[0] = std::move(value);
    return j;
  }
  // The jet of the coordinate itself: [rho0, 1, 0, ...].
  static Jet variable(int order, R base) {
    Jet j(order);
    j.d_[0] = std::move(base);
    if (order >= 1) j.d_[1] = R(1.0);
    return j;
  }

  int order() const { return order_; }
  R& operator[](int i) { return d_[static_cast<size_t>(i)]; }
  const R& operator[](int i) const { return d_[static_cast<size_t>(i)]; }

  // Value and first derivative shorthands.
  const R& value() const { return d_[0]; }

  Jet truncated(int m) const {
    if (m > order_) throw arity_error("Jet::truncated: cannot extend order");
    Jet out(m);
    for (int i = 0; i <= m; ++i) out.d_[i] = d_[i];
    return out;
  }

  // The overdot: jet of the rho-derivative, one order lower.
  Jet derivative() const {
    if (order_ < 1) throw arity_error("Jet::derivative: order 0 jet has no derivative jet");
    Jet out(order_ - 1);
    for (int i = 0; i < order_; ++i) out.d_[i] = d_[i + 1];
    return out;
  }

  Jet operator-() const {
    Jet out(order_);
    for (int i = 0; i <= order_; ++i) out.d_[i] = -d_[i];
    return out;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    same_order(a, b);
    Jet out(a.order_);
    for (int i = 0; i <= a.order_; ++i) out.d_[i] = a.d_[i] + b.d_[i];
    return out;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    same_order(a, b);
    Jet out(a.order_);
    for (int i = 0; i <= a.order_; ++i) out.d_[i] = a.d_[i] - b.d_[i];
    return out;
  }
  // Leibniz: (ab)^(k) = sum_j C(k,j) a^(j) b^(k-j).
  friend Jet operator*(const Jet& a, const Jet& b) {
    same_order(a, b);
    Jet out(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      R acc(0.0);
      for (int j = 0; j <= k; ++j) acc += detail::kBinom[k][j] * (a.d_[j] * b.d_[k - j]);
      out.d_[k] = acc;
    }
    return out;
  }
  // Solve c * b = a for c order by order.
  friend Jet operator/(const Jet& a, const Jet& b) {
    same_order(a, b);
    if (scalar_value(b.d_[0]) == 0.0)
      throw singularity_error("Jet: division by jet with zero constant term");
    Jet out(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      R acc = a.d_[k];
      for (int j = 0; j < k; ++j) acc -= detail::kBinom[k][j] * (out.d_[j] * b.d_[k - j]);
      out.d_[k] = acc / b.d_[0];
    }
    return out;
  }

  friend Jet operator*(const Jet& a, double c) {
    Jet out(a.order_);
    for (int i = 0; i <= a.order_; ++i) out.d_[i] = a.d_[i] * c;
    return out;
  }
  friend Jet operator*(double c, const Jet& a) { return a * c; }
  friend Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }

  // Elementwise multiplication by a ring constant (a constant in rho may
  // still carry perturbation slots).
  Jet scaled_by(const R& c) const {
    Jet out(order_);
    for (int i = 0; i <= order_; ++i) out.d_[i] = d_[i] * c;
    return out;
  }

 private:
  static int check_order(int order) {
    if (order < 0 || order > kMaxJetOrder) throw arity_error("Jet: order out of range");
    return order;
  }
  static void same_order(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_) throw arity_error("Jet: mixed-order arithmetic");
  }

  std::array<R, kMaxJetOrder + 1> d_;
  int order_ = 0;
};

// Joint recurrence for sine and cosine of a jet, directly in raw
// derivatives:
//   S^(k) = sum_{j<k} C(k-1,j) C^(j) a^(k-j),
//   C^(k) = -sum_{j<k} C(k-1,j) S^(j) a^(k-j).
template <class R>
std::pair<Jet<R>, Jet<R>> sin_cos(const Jet<R>& a) {
  using std::cos;
  using std::sin;
  const int K = a.order();
  Jet<R> s(K), c(K);
  s[0] = sin(a[0]);
  c[0] = cos(a[0]);
  for (int k = 1; k <= K; ++k) {
    R sa(0.0), ca(0.0);
    for (int j = 0; j < k; ++j) {
      sa += detail::kBinom[k - 1][j] * (c[j] * a[k - j]);
      ca += detail::kBinom[k - 1][j] * (s[j] * a[k - j]);
    }
    s[k] = sa;
    c[k] = -ca;
  }
  return {s, c};
}

template <class R>
std::pair<Jet<R>, Jet<R>> sinh_cosh(const Jet<R>& a) {
  using std::cosh;
  using std::sinh;
  const int K = a.order();
  Jet<R> s(K), c(K);
  s[0] = sinh(a[0]);
  c[0] = cosh(a[0]);
  for (int k = 1; k <= K; ++k) {
    R sa(0.0), ca(0.0);
    for (int j = 0; j < k; ++j) {
      sa += detail::kBinom[k - 1][j] * (c[j] * a[k - j]);
      ca += detail::kBinom[k - 1][j] * (s[j] * a[k - j]);
    }
    s[k] = sa;
    c[k] = ca;
  }
  return {s, c};
}

template <class R>
Jet<R> sin(const Jet<R>& a) {
  return sin_cos(a).first;
}
template <class R>
Jet<R> cos(const Jet<R>& a) {
  return sin_cos(a).second;
}

// g = sqrt(a): from g*g = a,
//   g^(k) = (a^(k) - sum_{0<j<k} C(k,j) g^(j) g^(k-j)) / (2 g^(0)).
template <class R>
Jet<R> sqrt(const Jet<R>& a) {
  using std::sqrt;
  if (scalar_value(a[0]) <= 0.0)
    throw domain_error("Jet: sqrt requires a positive constant term");
  const int K = a.order();
  Jet<R> g(K);
  g[0] = sqrt(a[0]);
  for (int k = 1; k <= K; ++k) {
    R acc = a[k];
    for (int j = 1; j < k; ++j) acc -= detail::kBinom[k][j] * (g[j] * g[k - j]);
    g[k] = acc / (2.0 * g[0]);
  }
  return g;
}

// g = a^e for real e: from a g' = e g a',
//   g^(k) = [e sum_{j<k} C(k-1,j) g^(j) a^(k-j)
//            - sum_{0<j<k} C(k-1,j) a^(j) g^(k-j)] / a^(0).
template <class R>
Jet<R> pow(const Jet<R>& a, double e) {
  using std::pow;
  if (scalar_value(a[0]) == 0.0)
    throw domain_error("Jet: pow requires a nonzero constant term");
  const int K = a.order();
  Jet<R> g(K);
  g[0] = pow(a[0], e);
  for (int k = 1; k <= K; ++k) {
    R acc(0.0);
    for (int j = 0; j < k; ++j) acc += detail::kBinom[k - 1][j] * (g[j] * a[k - j]) * e;
    for (int j = 1; j < k; ++j) acc -= detail::kBinom[k - 1][j] * (a[j] * g[k - j]);
    g[k] = acc / a[0];
  }
  return g;
}

}  // namespace polyharm
