#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polyharm/warped_domain.hpp"

using namespace polyharm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("biharmonic pole angles") {
  const auto a5 = pole_angle(2, 5);
  REQUIRE(a5.has_value());
  CHECK_THAT(*a5, WithinAbs(kPi / 3.0, 1e-14));

  const auto a6 = pole_angle(2, 6);
  REQUIRE(a6.has_value());
  CHECK_THAT(*a6, WithinAbs(0.5 * std::acos(-0.8), 1e-14));

  // n = 7 forces the equator map, which is excluded; n = 8 has no solution
  // at all (|2(n-4)/(1-n)| = 8/7 > 1).
  CHECK_FALSE(pole_angle(2, 7).has_value());
  CHECK_FALSE(pole_angle(2, 8).has_value());
  CHECK_THROWS_AS(pole_angle(2, 4), polyharm::domain_error);
}

TEST_CASE("triharmonic pole angle exists only at n = 7") {
  const auto a7 = pole_angle(3, 7);
  REQUIRE(a7.has_value());
  CHECK_THAT(*a7, WithinAbs(triharmonic_critical_angle(), 1e-12));
  CHECK_THAT(triharmonic_pole_expression(7, *a7), WithinAbs(0.0, 1e-10));
  for (int n = 8; n <= 20; ++n) CHECK_FALSE(pole_angle(3, n).has_value());
  CHECK_THROWS_AS(pole_angle(3, 6), polyharm::domain_error);
  CHECK_THROWS_AS(pole_angle(4, 9), polyharm::domain_error);
}

TEST_CASE("biharmonic residual on exact data") {
  // f = rho, n = 5, a = pi/3: 4(-1/2) + 0 + 2 = 0.
  Jet<double> f(2);
  f[0] = 0.5;
  f[1] = 1.0;
  f[2] = 0.0;
  CHECK_THAT(biharmonic_residual(5, kPi / 3.0, f), WithinAbs(0.0, 1e-15));

  // f = sinh at rho = 0.5 is not a solution.
  const auto sinh_jet = WarpFn::hyperbolic_sine().jet<double>(0.5, 2);
  CHECK(std::fabs(biharmonic_residual(5, kPi / 3.0, sinh_jet)) > 1e-3);

  CHECK_THROWS_AS(biharmonic_residual(5, 1.0, Jet<double>::constant(1, 1.0)),
                  polyharm::arity_error);
}

TEST_CASE("rigidity residual vanishes exactly on f = rho") {
  // 36 + 2(8 sqrt10 - 35) - 16 sqrt10 + 34 cancels exactly.
  for (double rho : {0.1, 0.5, 0.9}) {
    const auto f = WarpFn::identity().jet<double>(rho, 4);
    CHECK_THAT(triharmonic_rigidity_residual(f), WithinAbs(0.0, 1e-12));
    CHECK_THAT(ode_residual(3, 7, triharmonic_critical_angle(), f), WithinAbs(0.0, 1e-12));
  }
  CHECK_THROWS_AS(ode_residual(3, 8, 0.5, WarpFn::identity().jet<double>(0.5, 4)),
                  polyharm::domain_error);
}

TEST_CASE("general triharmonic expression matches the pole condition on pole data") {
  // With the model pole data the general expression collapses to the pole
  // condition for every (n, a).
  for (int n : {7, 9, 12}) {
    for (double a : {0.4, 0.9, 1.3}) {
      Jet<double> f(4);
      f[1] = 1.0;  // f = rho to first order, higher pole derivatives zero
      CHECK_THAT(triharmonic_residual(n, a, f),
                 WithinRel(triharmonic_pole_expression(n, a), 1e-12));
    }
  }
}

TEST_CASE("order-2 rigidity by shooting") {
  for (int n : {5, 6}) {
    const auto result = shoot_ode(n);
    CAPTURE(n);
    CHECK(result.sup_deviation <= 1e-8);
    CHECK(result.first_integral_drift <= 1e-10);
    CHECK(result.max_residual <= 1e-9);
    CHECK(result.observed_points > 10);
  }
  CHECK_THROWS_AS(shoot_ode(7), polyharm::domain_error);
}

TEST_CASE("induction cubic values in Z[sqrt10]") {
  const auto q1 = series_induction_q(1);
  CHECK(q1.rational_part == -7);
  CHECK(q1.sqrt10_part == 16);
  CHECK(q1.nonzero);
  CHECK_THAT(q1.approx, WithinAbs(43.596, 5e-4));

  const auto q2 = series_induction_q(2);
  CHECK(q2.rational_part == -128);
  CHECK(q2.sqrt10_part == 20);
  CHECK_THAT(q2.approx, WithinAbs(-64.754, 5e-4));

  // Sign change between j = 1 and j = 2, then strictly decreasing.
  CHECK(q1.approx > 0.0);
  CHECK(q2.approx < 0.0);
  double prev = q2.approx;
  for (long long j = 3; j <= 100; ++j) {
    const double value = series_induction_q(j).approx;
    CHECK(value < prev);
    prev = value;
  }
}

TEST_CASE("induction cubic has no integer zero up to 1e6") {
  const auto summary = series_induction_check(1'000'000);
  CHECK(summary.all_nonzero);
  CHECK_FALSE(summary.first_zero.has_value());
  CHECK_THROWS_AS(series_induction_check(0), polyharm::domain_error);
}

TEST_CASE("pole expansion of the rigidity residual matches the induction coefficients") {
  // Probing b_{2j*+3} with all lower coefficients zero, the coefficient of
  // rho^(2j*+2) is 4 b (2j*+3) q(j*); j* = 0 reproduces the first step
  // 144 (2 + sqrt10) b3.
  const double b = 0.01;
  {
    const auto jet = rigidity_residual_jet(WarpFn::series({b}), 2);
    const double expected = 144.0 * (2.0 + kSqrt10) * b;  // = 4 b * 3 * q(0)
    CHECK_THAT(jet[2] / 2.0, WithinRel(expected, 1e-9));  // raw second derivative = 2! coeff
    CHECK_THAT(jet[0], WithinAbs(0.0, 1e-12));
    CHECK_THAT(jet[1], WithinAbs(0.0, 1e-12));
  }
  {
    const auto jet = rigidity_residual_jet(WarpFn::series({0.0, b}), 4);
    const double q1 = series_induction_q(1).approx;
    const double expected = 4.0 * b * 5.0 * q1;
    CHECK_THAT(jet[4] / 24.0, WithinRel(expected, 1e-9));  // 4! = 24
  }
  {
    const auto jet = rigidity_residual_jet(WarpFn::series({0.0, 0.0, b}), 6);
    const double q2 = series_induction_q(2).approx;
    const double expected = 4.0 * b * 7.0 * q2;
    CHECK_THAT(jet[6] / 720.0, WithinRel(expected, 1e-9));  // 6! = 720
  }
}
