#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polyharm/energy.hpp"
#include "polyharm/roots.hpp"

// Rotationally symmetric maps of the flat ball onto the ellipsoid with
// semi-axis b: x -> (sin(alpha) x/rho, b cos(alpha)). The induced target
// metric is sin^2(alpha) g_S + k^2(alpha) d alpha^2 with
// k(alpha) = sqrt(cos^2 alpha + b^2 sin^2 alpha), which is not arc length
// in alpha, so the ellipsoid keeps its own tension and Lagrangians instead
// of reusing the warped-product recursion; the b = 1 reduction against the
// spherical module is the cross-check.
//
// Energies here follow the source convention "up to an irrelevant constant
// factor": the bienergy density is tau^2 k^2 rho^(n-1) with no 1/2, which
// at b = 1 is exactly twice the spherical L_2. Only roots and windows are
// contract-bearing.

namespace polyharm {

struct EllipsoidConfig {
  int n = 5;
  double b = 1.0;

  EllipsoidConfig(int dim, double semi_axis) : n(dim), b(semi_axis) {
    if (n < 2) throw domain_error("EllipsoidConfig: dimension must be >= 2");
    if (!(b > 0.0)) throw domain_error("EllipsoidConfig: semi-axis must be positive");
  }
};

// k(alpha) and k'(alpha) as jets in rho for a jet-valued angle.
template <class R>
struct EllipsoidKJets {
  Jet<R> k;
  Jet<R> kprime;
};

template <class R>
EllipsoidKJets<R> ellipsoid_k_jets(const Jet<R>& alpha, double b) {
  auto [s, c] = sin_cos(alpha);
  const auto k2 = c * c + (b * b) * (s * s);
  auto k = sqrt(k2);
  auto kprime = ((b * b - 1.0) * (s * c)) / k;
  return {std::move(k), std::move(kprime)};
}

// tau = alpha'' + (n-1) alpha'/rho - (n-1) sin(alpha)cos(alpha)/(rho^2 k^2)
//       + (k'/k) alpha'^2, as a jet of order alpha.order() - 2.
template <class R>
Jet<R> ellipsoid_tension_from_jets(const Jet<R>& alpha, double rho0, const EllipsoidConfig& cfg) {
  if (alpha.order() < 2)
    throw arity_error("ellipsoid_tension: profile jet must have order >= 2");
  const int M = alpha.order() - 2;
  const auto aM = alpha.truncated(M);
  const auto adot = alpha.derivative().truncated(M);
  const auto addot = alpha.derivative().derivative().truncated(M);
  const auto rho = Jet<R>::variable(M, R(rho0));
  auto [s, c] = sin_cos(aM);
  const auto k2 = c * c + (cfg.b * cfg.b) * (s * s);
  const auto k = sqrt(k2);
  const auto kprime = ((cfg.b * cfg.b - 1.0) * (s * c)) / k;
  const double nm1 = static_cast<double>(cfg.n - 1);
  return addot + nm1 * (adot / rho) - nm1 * ((s * c) / (rho * rho * k2)) +
         (kprime / k) * (adot * adot);
}

template <class R, class Profile>
Jet<R> ellipsoid_tension_jet(double rho0, const Profile& prof, const EllipsoidConfig& cfg,
                             int out_order) {
  return ellipsoid_tension_from_jets(prof.template jet<R>(rho0, out_order + 2), rho0, cfg);
}

template <class Profile>
double ellipsoid_tension(double rho0, const Profile& prof, const EllipsoidConfig& cfg) {
  return ellipsoid_tension_jet<double>(rho0, prof, cfg, 0)[0];
}

// Density of the bienergy (order 2) or trienergy (order 3).
template <class R, class Profile>
R ellipsoid_lagrangian(double rho0, const Profile& prof, const EllipsoidConfig& cfg, int order) {
  using std::pow;
  if (order != 2 && order != 3)
    throw unsupported_error("ellipsoid_lagrangian: order must be 2 or 3");
  const int K = order;  // alpha derivatives consumed: 2 for L2, 3 for L3
  const auto alpha = prof.template jet<R>(rho0, K);
  const R rpow = pow(R(rho0), static_cast<double>(cfg.n - 1));
  if (order == 2) {
    const auto tau = ellipsoid_tension_from_jets(alpha, rho0, cfg);
    const auto kj = ellipsoid_k_jets(alpha.truncated(0), cfg.b);
    const R t = tau[0];
    const R k0 = kj.k[0];
    return t * t * (k0 * k0) * rpow;
  }
  // order 3: rho^(n-1) [ (n-1) tau^2 cos^2(alpha)/rho^2
  //                      + (k tau' + k' alpha' tau)^2 ]
  const auto tau = ellipsoid_tension_from_jets(alpha, rho0, cfg);  // order 1
  const auto kj = ellipsoid_k_jets(alpha.truncated(1), cfg.b);
  const R t = tau[0];
  const R tdot = tau[1];
  const R adot = alpha[1];
  const R k0 = kj.k[0];
  const R kp0 = kj.kprime[0];
  using std::cos;
  const R c0 = cos(alpha[0]);
  const double nm1 = static_cast<double>(cfg.n - 1);
  const R covariant = k0 * tdot + kp0 * adot * t;
  return rpow * (nm1 * (t * t) * (c0 * c0) / R(rho0 * rho0) + covariant * covariant);
}

// Sobolev gates: the constant-profile ellipsoid class is W^{2,2} iff n >= 5
// and W^{3,2} iff n >= 7.
inline void ellipsoid_require_sobolev(int order, int n) {
  if (order == 2 && n < 5)
    throw domain_error("ellipsoid: order 2 requires n >= 5");
  if (order == 3 && n < 7)
    throw domain_error("ellipsoid: order 3 requires n >= 7");
}

template <class R, class Profile>
QuadResult<R> ellipsoid_energy(const Profile& prof, const EllipsoidConfig& cfg, int order,
                               const QuadOptions& qopt = {}) {
  if (order != 2 && order != 3)
    throw unsupported_error("ellipsoid_energy: order must be 2 or 3");
  ellipsoid_require_sobolev(order, cfg.n);
  return integrate_unit<R>(
      [&](double rho) { return ellipsoid_lagrangian<R>(rho, prof, cfg, order); }, qopt);
}

inline double ellipsoid_first_variation(double a, const Bump& v, const EllipsoidConfig& cfg,
                                        int order, const QuadOptions& qopt = {}) {
  if (!v.admissible_for_order(order))
    throw admissibility_error("ellipsoid_first_variation: bump not admissible for order " +
                              std::to_string(order));
  ellipsoid_require_sobolev(order, cfg.n);
  const ProfileFamily family(a, v);
  return integrate_unit<double>(
             [&](double rho) {
               return ellipsoid_lagrangian<Perturbation2>(rho, family, cfg, order).v1;
             },
             qopt)
      .value;
}

// ---------------------------------------------------------------------------
// Existence windows.

struct WindowReport {
  int order = 2;
  int n = 0;
  double b = 0.0;
  double b2 = 0.0;
  double bound = 0.0;
  bool inside = false;
  std::string theorem;
};

inline WindowReport biharmonic_window(int n, double b) {
  if (n < 5) throw domain_error("biharmonic_window: requires n >= 5");
  if (!(b > 0.0)) throw domain_error("biharmonic_window: semi-axis must be positive");
  const double bound = static_cast<double>(n - 1) / (2.0 * (n - 4));
  // The strict inequality: the boundary counts as outside.
  return {2, n, b, b * b, bound, b * b < bound, "Thm1.6"};
}

inline WindowReport triharmonic_window(int n, double b) {
  if (n < 7) throw domain_error("triharmonic_window: requires n >= 7");
  if (!(b > 0.0)) throw domain_error("triharmonic_window: semi-axis must be positive");
  const double bound = static_cast<double>(n - 1) / (4.0 * (n - 6));
  return {3, n, b, b * b, bound, b * b < bound, "Thm1.8"};
}

// ---------------------------------------------------------------------------
// Criticality polynomials.

struct EllipsoidPolynomial {
  int order = 2;
  int n = 0;
  double b = 0.0;
  std::vector<double> coefficients;  // descending
  std::vector<double> admissible_roots;
  std::vector<double> angles;
};

// P2(y) = (2 b^2 (n-4) - n + 1) y^2 + 4 (n-4) y + 3 (n-3)/b^2 in y = tan^2 a;
// admissible roots are the positive ones.
inline EllipsoidPolynomial biharmonic_polynomial(int n, double b) {
  if (n < 5) throw domain_error("biharmonic_polynomial: requires n >= 5");
  EllipsoidPolynomial out;
  out.order = 2;
  out.n = n;
  out.b = b;
  const double m = static_cast<double>(n);
  out.coefficients = {2.0 * b * b * (m - 4.0) - m + 1.0, 4.0 * (m - 4.0),
                      3.0 * (m - 3.0) / (b * b)};
  for (double y :
       real_roots_quadratic(out.coefficients[0], out.coefficients[1], out.coefficients[2])) {
    if (y > 0.0) {
      out.admissible_roots.push_back(y);
      out.angles.push_back(std::atan(std::sqrt(y)));
    }
  }
  return out;
}

// Exact coefficients of the cubic P_b(x) in x = cos^2 a, as polynomials in
// t = b^2. Shared by the polynomial builder and the identity checks.
inline std::vector<double> triharmonic_cubic_coefficients(int n, double b) {
  const double m = static_cast<double>(n);
  const double t = b * b;
  const double a3 = (t - 1.0) * (2.0 * (m - 4.0) * t - 3.0 * (m - 3.0)) *
                    (4.0 * (m - 6.0) * t - 5.0 * (m - 5.0));
  const double a2 = -t * (24.0 * (m - 4.0) * (m - 6.0) * t * t +
                          (-62.0 * m * m + 566.0 * m - 1224.0) * t +
                          (41.0 * m * m - 332.0 * m + 651.0));
  const double a1 = 2.0 * t * (12.0 * (m - 4.0) * (m - 6.0) * t * t +
                               (-17.0 * m * m + 149.0 * m - 312.0) * t +
                               (m - 1.0) * (2.0 * m - 5.0));
  const double a0 = -2.0 * t * t * (m - 4.0) * (4.0 * (m - 6.0) * t - m + 1.0);
  return {a3, a2, a1, a0};
}

// P_b(x) = A3 x^3 + A2 x^2 + A1 x + A0; admissible roots lie in (0,1).
inline EllipsoidPolynomial triharmonic_polynomial(int n, double b) {
  if (n < 7) throw domain_error("triharmonic_polynomial: requires n >= 7");
  EllipsoidPolynomial out;
  out.order = 3;
  out.n = n;
  out.b = b;
  out.coefficients = triharmonic_cubic_coefficients(n, b);
  for (double x : real_roots_cubic(out.coefficients[0], out.coefficients[1], out.coefficients[2],
                                   out.coefficients[3])) {
    if (x > 0.0 && x < 1.0) {
      out.admissible_roots.push_back(x);
      out.angles.push_back(0.5 * std::acos(2.0 * x - 1.0));
    }
  }
  return out;
}

// Closed-form biharmonic angle a(b, n), valid strictly inside the window.
inline double closed_form_angle(int n, double b) {
  const auto window = biharmonic_window(n, b);
  if (!window.inside)
    throw domain_error("closed_form_angle: (n, b) must lie inside the biharmonic window");
  const double m = static_cast<double>(n);
  const double inner = -((m - 1.0) * (2.0 * b * b * (m - 4.0) - 3.0 * m + 9.0));
  if (!(inner > 0.0)) throw domain_error("closed_form_angle: negative inner radicand");
  const double num = -(std::sqrt(inner) + 2.0 * b * (m - 4.0));
  const double den = 2.0 * b * b * b * (m - 4.0) - b * m + b;
  const double ratio = num / den;
  if (!(ratio > 0.0)) throw domain_error("closed_form_angle: negative outer radicand");
  return std::atan(std::sqrt(ratio));
}

}  // namespace polyharm
