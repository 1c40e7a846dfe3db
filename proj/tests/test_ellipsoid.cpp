#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polyharm/criticality.hpp"
#include "polyharm/ellipsoid.hpp"

using namespace polyharm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("ellipsoid tension reduces to the spherical one at b = 1") {
  const EllipsoidConfig cfg(7, 1.0);
  const auto mp = ModelPair::ball_to_sphere(7);
  const ProfileFamily prof(0.9);
  for (double rho : {0.2, 0.5, 0.9}) {
    CHECK_THAT(ellipsoid_tension(rho, prof, cfg), WithinRel(tension(rho, prof, mp), 1e-12));
  }
}

TEST_CASE("ellipsoid tension by hand at n=5, b=2") {
  // Constant a = pi/4 at rho = 1: k^2 = 1/2 + 4/2 = 5/2 and
  // tau = -4 (1/2) / (5/2) = -4/5.
  const EllipsoidConfig cfg(5, 2.0);
  CHECK_THAT(ellipsoid_tension(1.0 - 1e-12, ProfileFamily(kPi / 4.0), cfg),
             WithinRel(-0.8, 1e-11));
}

TEST_CASE("ellipsoid tension jets agree with finite differences") {
  const EllipsoidConfig cfg(6, 0.7);
  const ProfileFamily family(0.8, Bump(1, 3));
  const auto prof = family.at(0.2);
  const double h = 1e-4;
  for (double rho : {0.3, 0.6}) {
    const auto jet = ellipsoid_tension_jet<double>(rho, prof, cfg, 1);
    const double fd = (ellipsoid_tension(rho + h, prof, cfg) -
                       ellipsoid_tension(rho - h, prof, cfg)) /
                      (2.0 * h);
    CHECK_THAT(jet[1], WithinRel(fd, 1e-6));
  }
}

TEST_CASE("constant-profile bienergy value") {
  // n=5, b=1, a=pi/3: tau^2 k^2 rho^4 = 3 for every rho, so E_2 = 3
  // (twice the spherical value 3/2, the documented constant factor).
  const EllipsoidConfig cfg(5, 1.0);
  const auto e = ellipsoid_energy<double>(ProfileFamily(kPi / 3.0), cfg, 2);
  CHECK_THAT(e.value, WithinAbs(3.0, 1e-12));
  const auto sphere =
      energy<double>(ProfileFamily(kPi / 3.0), ModelPair::ball_to_sphere(5), {2, Variant::standard});
  CHECK_THAT(e.value, WithinRel(2.0 * sphere.value, 1e-12));
}

TEST_CASE("harmonic profiles zero the ellipsoid energies") {
  // The equator map: sin(a) cos(a) = 0 makes tau vanish identically.
  const EllipsoidConfig cfg(7, 1.3);
  for (int order : {2, 3}) {
    const auto e = ellipsoid_energy<double>(ConstantProfile{kPi / 2.0}, cfg, order);
    CHECK(std::fabs(e.value) <= 1e-14);
  }
}

TEST_CASE("sobolev gates of the ellipsoid energies") {
  const ProfileFamily prof(1.0);
  CHECK_THROWS_AS(ellipsoid_energy<double>(prof, EllipsoidConfig(4, 1.0), 2),
                  polyharm::domain_error);
  CHECK_THROWS_AS(ellipsoid_energy<double>(prof, EllipsoidConfig(6, 1.0), 3),
                  polyharm::domain_error);
  CHECK_THROWS_AS(ellipsoid_energy<double>(prof, EllipsoidConfig(7, 1.0), 4),
                  polyharm::unsupported_error);
}

TEST_CASE("existence windows") {
  const auto w5 = biharmonic_window(5, 1.0);
  CHECK_THAT(w5.bound, WithinAbs(2.0, 1e-15));
  CHECK(w5.inside);
  const auto w7 = biharmonic_window(7, 1.0);
  CHECK_THAT(w7.bound, WithinAbs(1.0, 1e-15));
  CHECK_FALSE(w7.inside);  // strict inequality
  const auto t7 = triharmonic_window(7, 1.0);
  CHECK_THAT(t7.bound, WithinAbs(1.5, 1e-15));
  CHECK(t7.inside);
  CHECK_THROWS_AS(biharmonic_window(4, 1.0), polyharm::domain_error);
  CHECK_THROWS_AS(triharmonic_window(6, 1.0), polyharm::domain_error);
}

TEST_CASE("biharmonic polynomial at the spherical point") {
  // n=5, b=1: P2(y) = -2y^2 + 4y + 6 with positive root y = 3, a = pi/3.
  const auto p = biharmonic_polynomial(5, 1.0);
  REQUIRE(p.coefficients.size() == 3);
  CHECK(p.coefficients[0] == -2.0);
  CHECK(p.coefficients[1] == 4.0);
  CHECK(p.coefficients[2] == 6.0);
  REQUIRE(p.admissible_roots.size() == 1);
  CHECK_THAT(p.admissible_roots[0], WithinAbs(3.0, 1e-12));
  CHECK_THAT(p.angles[0], WithinAbs(kPi / 3.0, 1e-13));
}

TEST_CASE("triharmonic cubic reduces to the spherical polynomial at b = 1") {
  // At b = 1 the cubic collapses to minus the spherical r=3 quadratic, so
  // its root at n = 7 is cos^2(a_3).
  const auto p = triharmonic_polynomial(7, 1.0);
  REQUIRE(p.admissible_roots.size() == 1);
  CHECK_THAT(p.admissible_roots[0], WithinAbs((std::sqrt(10.0) - 1.0) / 9.0, 1e-12));
  const auto c = triharmonic_cubic_coefficients(7, 1.0);
  CHECK(c[0] == 0.0);  // (b^2 - 1) kills the cubic coefficient
}

TEST_CASE("P_b(1) identity in exact coefficient arithmetic") {
  for (int n : {7, 9, 12, 14}) {
    for (double b : {0.3, 1.0, 1.7}) {
      const auto c = triharmonic_cubic_coefficients(n, b);
      const double sum = c[0] + c[1] + c[2] + c[3];
      const double expect = -15.0 * (static_cast<double>(n) * n - 8.0 * n + 15.0);
      CHECK_THAT(sum, WithinRel(expect, 1e-12));
    }
  }
}

TEST_CASE("closed-form biharmonic angle") {
  CHECK_THAT(closed_form_angle(5, 1.0), WithinAbs(kPi / 3.0, 1e-13));
  CHECK_THAT(closed_form_angle(6, 1.0), WithinAbs(0.5 * std::acos(-0.8), 1e-12));
  // Inside the window at (10, 0.5): the angle zeroes the weak form.
  const double a = closed_form_angle(10, 0.5);
  const EllipsoidConfig cfg(10, 0.5);
  CHECK(std::fabs(ellipsoid_first_variation(a, Bump(0, 2), cfg, 2)) <= 1e-8);
  // Outside the window the formula is not defined.
  CHECK_THROWS_AS(closed_form_angle(7, 1.0), polyharm::domain_error);
}

TEST_CASE("polynomial roots zero the ellipsoid weak form") {
  // order 2, n=8, b=0.6 (inside the window: 0.36 < 7/8).
  {
    const auto p = biharmonic_polynomial(8, 0.6);
    REQUIRE(p.angles.size() >= 1);
    const EllipsoidConfig cfg(8, 0.6);
    for (double a : p.angles)
      CHECK(std::fabs(ellipsoid_first_variation(a, Bump(0, 2), cfg, 2)) <= 1e-8);
  }
  // order 3, n=9, b=0.7 (inside: 0.49 < 8/12).
  {
    const auto p = triharmonic_polynomial(9, 0.7);
    REQUIRE(p.angles.size() >= 1);
    const EllipsoidConfig cfg(9, 0.7);
    for (double a : p.angles)
      CHECK(std::fabs(ellipsoid_first_variation(a, Bump(0, 3), cfg, 3)) <= 1e-8);
  }
}

TEST_CASE("ellipsoid admissibility gate") {
  const EllipsoidConfig cfg(9, 0.7);
  CHECK_THROWS_AS(ellipsoid_first_variation(0.9, Bump(0, 2), cfg, 3),
                  polyharm::admissibility_error);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(EllipsoidConfig(5, 0.0), polyharm::domain_error);
  CHECK_THROWS_AS(EllipsoidConfig(5, -1.0), polyharm::domain_error);
  CHECK_THROWS_AS(EllipsoidConfig(1, 1.0), polyharm::domain_error);
}
