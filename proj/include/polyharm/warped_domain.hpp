#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "polyharm/errors.hpp"
#include "polyharm/jet.hpp"
#include "polyharm/roots.hpp"
#include "polyharm/warp.hpp"

// The inverse problem on a unit geodesic ball with warp f: which f admit
// constant-profile weakly bi/triharmonic maps onto the round sphere. The
// pole conditions pin the angle (and the admissible dimensions); the
// resulting ODEs force f(rho) = rho, which is verified here by shooting
// (order 2) and by an exact power-series induction in Z[sqrt(10)] (order 3).

namespace polyharm {

inline constexpr double kSqrt10 = 3.1622776601683795;

// ---------------------------------------------------------------------------
// Pole angle conditions.

// Triharmonic pole condition as written: 8(n^2-6n+5) cos 2a
// + (n-1)^2 cos^2 a (3 cos 2a - 1) + 20 n^2 - 188 n + 408 = 0.
inline double triharmonic_pole_expression(int n, double a) {
  const double m = static_cast<double>(n);
  const double c2 = std::cos(2.0 * a);
  const double cs = std::cos(a) * std::cos(a);
  return 8.0 * (m * m - 6.0 * m + 5.0) * c2 + (m - 1.0) * (m - 1.0) * cs * (3.0 * c2 - 1.0) +
         20.0 * m * m - 188.0 * m + 408.0;
}

// Angle a in (0, pi/2) forced at the pole, if any. Order 2:
// cos 2a = 2(n-4)/(1-n). Order 3: the quadratic in c = cos 2a obtained by
// substituting cos^2 a = (1+c)/2 into the pole condition,
//   3(n-1)^2 c^2 + 2(n-1)(9n-41) c + 39n^2 - 374n + 815 = 0,
// with each candidate verified against the raw expression.
inline std::optional<double> pole_angle(int order, int n) {
  if (order == 2) {
    if (n < 5) throw domain_error("pole_angle: order 2 requires n >= 5");
    const double c = 2.0 * (n - 4.0) / (1.0 - n);
    if (!(c > -1.0 && c < 1.0)) return std::nullopt;  // c = -1 is the equator map
    return 0.5 * std::acos(c);
  }
  if (order == 3) {
    if (n < 7) throw domain_error("pole_angle: order 3 requires n >= 7");
    const double m = static_cast<double>(n);
    const auto roots = real_roots_quadratic(3.0 * (m - 1.0) * (m - 1.0),
                                            2.0 * (m - 1.0) * (9.0 * m - 41.0),
                                            39.0 * m * m - 374.0 * m + 815.0);
    std::optional<double> best;
    for (double c : roots) {
      if (!(c > -1.0 && c < 1.0)) continue;
      const double a = 0.5 * std::acos(c);
      if (std::fabs(triharmonic_pole_expression(n, a)) > 1e-6)
        throw domain_error("pole_angle: quadratic candidate fails the raw pole condition");
      if (!best || a < *best) best = a;
    }
    return best;
  }
  throw domain_error("pole_angle: order must be 2 or 3");
}

// ---------------------------------------------------------------------------
// Residuals.

// (n-1) cos 2a + 2 f f'' + 2 (n-4) f'^2.
inline double biharmonic_residual(int n, double a, const Jet<double>& f) {
  if (f.order() < 2) throw arity_error("biharmonic_residual: f jet must have order >= 2");
  return (n - 1.0) * std::cos(2.0 * a) + 2.0 * f[0] * f[2] + 2.0 * (n - 4.0) * f[1] * f[1];
}

// The full triharmonicity expression for general (n, a).
inline double triharmonic_residual(int n, double a, const Jet<double>& f) {
  if (f.order() < 4) throw arity_error("triharmonic_residual: f jet must have order >= 4");
  const double m = static_cast<double>(n);
  const double c2 = std::cos(2.0 * a);
  const double cs = std::cos(a) * std::cos(a);
  const double f0 = f[0], f1 = f[1], f2 = f[2], f3 = f[3], f4 = f[4];
  return 4.0 * (m - 1.0) * (2.0 * c2 + 1.0) * f0 * f2 +
         4.0 * f1 * f1 *
             ((m - 1.0) * (2.0 * (m - 5.0) * c2 + m - 6.0) +
              (-2.0 * m * m + 33.0 * m - 103.0) * f0 * f2) +
         (m - 1.0) * (m - 1.0) * cs * (3.0 * c2 - 1.0) - 4.0 * f0 * f0 * f0 * f4 +
         4.0 * (11.0 - 2.0 * m) * f0 * f0 * f2 * f2 +
         16.0 * (m * m - 10.0 * m + 24.0) * f1 * f1 * f1 * f1 -
         12.0 * (m - 5.0) * f0 * f0 * f3 * f1;
}

// The triharmonicity condition specialized to n = 7, a = a_3, whose only
// analytic solution with pole data is f(rho) = rho:
//   -3 f^3 f'''' - 9 (f f'')^2 + (8 sqrt10 - 26) f f'' + 36 f'^4
//   - 18 f^2 f''' f' + 2 f'^2 (45 f f'' + 8 sqrt10 - 35) - 16 sqrt10 + 34.
inline double triharmonic_rigidity_residual(const Jet<double>& f) {
  if (f.order() < 4)
    throw arity_error("triharmonic_rigidity_residual: f jet must have order >= 4");
  const double f0 = f[0], f1 = f[1], f2 = f[2], f3 = f[3], f4 = f[4];
  return -3.0 * f0 * f0 * f0 * f4 - 9.0 * (f0 * f2) * (f0 * f2) +
         (8.0 * kSqrt10 - 26.0) * f0 * f2 + 36.0 * f1 * f1 * f1 * f1 -
         18.0 * f0 * f0 * f3 * f1 + 2.0 * f1 * f1 * (45.0 * f0 * f2 + 8.0 * kSqrt10 - 35.0) -
         16.0 * kSqrt10 + 34.0;
}

inline double triharmonic_critical_angle() {
  return 0.5 * std::acos((2.0 * kSqrt10 - 11.0) / 9.0);
}

inline double ode_residual(int order, int n, double a, const Jet<double>& f) {
  if (order == 2) return biharmonic_residual(n, a, f);
  if (order == 3) {
    if (n != 7 || std::fabs(a - triharmonic_critical_angle()) > 1e-9)
      throw domain_error("ode_residual: order 3 is defined at n = 7, a = a_3");
    return triharmonic_rigidity_residual(f);
  }
  throw domain_error("ode_residual: order must be 2 or 3");
}

// Same rigidity expression evaluated as a jet at the pole, for power-series
// inputs: the coefficient of rho^(2j+2) must vanish order by order, which
// kills the series coefficients b_3, b_5, ... one at a time.
inline Jet<double> rigidity_residual_jet(const WarpFn& f, int order) {
  const auto fj = f.pole_jet(order + 4);
  const auto f0 = fj.truncated(order);
  const auto f1 = fj.derivative().truncated(order);
  const auto f2 = fj.derivative().derivative().truncated(order);
  const auto f3 = fj.derivative().derivative().derivative().truncated(order);
  const auto f4 = fj.derivative().derivative().derivative().derivative().truncated(order);
  const auto ff2 = f0 * f2;
  const auto f1sq = f1 * f1;
  auto out = (-3.0) * (f0 * f0 * f0 * f4) - 9.0 * (ff2 * ff2) + (8.0 * kSqrt10 - 26.0) * ff2 +
             36.0 * (f1sq * f1sq) - 18.0 * (f0 * f0 * f3 * f1) +
             2.0 * (f1sq * (45.0 * ff2 + Jet<double>::constant(order, 8.0 * kSqrt10 - 35.0)));
  out[0] += 34.0 - 16.0 * kSqrt10;
  return out;
}

// ---------------------------------------------------------------------------
// Order-2 rigidity by shooting.

struct ShootResult {
  int n = 0;
  double sup_deviation = 0.0;        // sup |f - rho| along the trajectory
  double first_integral_drift = 0.0; // n=5: |f f' - rho|; n=6: |f^4 f'^2 - f^4|
  double max_residual = 0.0;         // biharmonicity residual along the way
  std::size_t observed_points = 0;
};

// Integrates f f'' + (n-4) f'^2 = (n-4) from rho0 = 1e-6 with the series
// data f = rho0, f' = 1 and reports how far the trajectory strays from
// f = rho. The pole angle makes the biharmonicity residual equal to twice
// the ODE defect, so it is tracked as well.
inline ShootResult shoot_ode(int n, double rho_start = 1e-6, double tol = 1e-12) {
  if (n != 5 && n != 6) throw domain_error("shoot_ode: order-2 rigidity is posed for n in {5, 6}");
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;  // f, f'

  const double nm4 = static_cast<double>(n - 4);
  auto system = [nm4](const State& y, State& dy, double /*rho*/) {
    dy[0] = y[1];
    dy[1] = nm4 * (1.0 - y[1] * y[1]) / y[0];
  };

  const auto a = pole_angle(2, n);
  if (!a) throw domain_error("shoot_ode: no pole angle at this dimension");
  ShootResult result;
  result.n = n;
  auto observe = [&](const State& y, double rho) {
    ++result.observed_points;
    result.sup_deviation = std::max(result.sup_deviation, std::fabs(y[0] - rho));
    const double drift = (n == 5)
                             ? y[0] * y[1] - rho
                             : std::pow(y[0], 4) * y[1] * y[1] - std::pow(y[0], 4);
    result.first_integral_drift = std::max(result.first_integral_drift, std::fabs(drift));
    Jet<double> fj(2);
    fj[0] = y[0];
    fj[1] = y[1];
    fj[2] = nm4 * (1.0 - y[1] * y[1]) / y[0];
    result.max_residual =
        std::max(result.max_residual, std::fabs(biharmonic_residual(n, *a, fj)));
  };

  State y{rho_start, 1.0};
  try {
    odeint::integrate_adaptive(
        odeint::make_controlled<odeint::runge_kutta_cash_karp54<State>>(tol, tol), system, y,
        rho_start, 1.0, 1e-6, [&](const State& s, double rho) { observe(s, rho); });
  } catch (const std::exception& e) {
    throw accuracy_error(std::string("shoot_ode: integration failure: ") + e.what(),
                         result.sup_deviation);
  }
  observe(y, 1.0);
  return result;
}

// ---------------------------------------------------------------------------
// Exact Z[sqrt(10)] evaluation of the induction cubic
//   q(j) = -6 j^3 - 27 j^2 + (4 sqrt10 + 2) j + 12 (2 + sqrt10)
//        = (-6 j^3 - 27 j^2 + 2 j + 24) + (4 j + 12) sqrt10.
// Floating point cannot certify q(j) != 0 at large j; the integer pair can,
// because sqrt10 is irrational.

struct QValue {
  long long j = 0;
  long long rational_part = 0;
  long long sqrt10_part = 0;
  bool nonzero = true;
  double approx = 0.0;
};

inline QValue series_induction_q(long long j) {
  if (j < 0 || j > 1'000'000) throw domain_error("series_induction_q: j out of supported range");
  const __int128 jj = j;
  const __int128 p = -6 * jj * jj * jj - 27 * jj * jj + 2 * jj + 24;
  const __int128 s = 4 * jj + 12;
  QValue out;
  out.j = j;
  out.rational_part = static_cast<long long>(p);
  out.sqrt10_part = static_cast<long long>(s);
  out.nonzero = !(p == 0 && s == 0);
  out.approx = static_cast<double>(out.rational_part) + static_cast<double>(out.sqrt10_part) * kSqrt10;
  return out;
}

struct SeriesInductionSummary {
  long long max_j = 0;
  bool all_nonzero = true;
  std::optional<long long> first_zero;
};

inline SeriesInductionSummary series_induction_check(long long max_j) {
  if (max_j < 1) throw domain_error("series_induction_check: max_j must be >= 1");
  SeriesInductionSummary summary;
  summary.max_j = max_j;
  for (long long j = 1; j <= max_j; ++j) {
    const __int128 jj = j;
    const __int128 p = -6 * jj * jj * jj - 27 * jj * jj + 2 * jj + 24;
    const __int128 s = 4 * jj + 12;
    if (p == 0 && s == 0) {
      summary.all_nonzero = false;
      summary.first_zero = j;
      break;
    }
  }
  return summary;
}

}  // namespace polyharm
