#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polyharm/criticality.hpp"

using namespace polyharm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("sobolev membership table spot checks") {
  CHECK(sobolev_check(3, 7).member);
  CHECK_FALSE(sobolev_check(3, 6).member);
  CHECK(sobolev_check(2, 5).member);
  CHECK_FALSE(sobolev_check(2, 4).member);
  CHECK_THROWS_AS(sobolev_check(0, 5), polyharm::domain_error);

  const auto rep = sobolev_check(3, 6);
  bool failing_constraint = false;
  for (const auto& c : rep.constraints)
    if (!c.pass) failing_constraint = true;
  CHECK(failing_constraint);
}

TEST_CASE("first variation vanishes exactly at the published angles") {
  const auto mp5 = ModelPair::ball_to_sphere(5);
  CHECK(std::fabs(first_variation(kPi / 3.0, Bump(0, 3), mp5, {2, Variant::standard})) <= 1e-9);

  const auto mp7 = ModelPair::ball_to_sphere(7);
  const double a3 = 0.5 * std::acos((2.0 * std::sqrt(10.0) - 11.0) / 9.0);
  CHECK(std::fabs(first_variation(a3, Bump(0, 3), mp7, {3, Variant::standard})) <= 1e-9);
  // And not at a generic angle.
  CHECK(std::fabs(first_variation(kPi / 4.0, Bump(0, 3), mp7, {3, Variant::standard})) > 1e-3);

  CHECK_THROWS_AS(first_variation(1.0, Bump(0, 3), mp7, {5, Variant::standard}),
                  polyharm::admissibility_error);
}

TEST_CASE("conjectured closed-form angles") {
  const auto c2 = conjecture_angle(2);
  CHECK(c2.n == 5);
  CHECK_THAT(c2.arccos_argument, WithinAbs(-0.5, 1e-15));
  CHECK_THAT(c2.a, WithinAbs(kPi / 3.0, 1e-14));

  CHECK_THAT(conjecture_angle(4).arccos_argument,
             WithinAbs((std::sqrt(105.0) - 19.0) / 16.0, 1e-15));
  CHECK_THAT(conjecture_angle(5).arccos_argument,
             WithinAbs((6.0 * std::sqrt(6.0) - 29.0) / 25.0, 1e-15));
  CHECK_THROWS_AS(conjecture_angle(1), polyharm::domain_error);
  for (int r = 2; r <= 12; ++r) CHECK_NOTHROW(conjecture_angle(r));
}

TEST_CASE("explicit criticality polynomials") {
  // r=3, n=7: 108 x^2 + 24 x - 12, root (sqrt10 - 1)/9 inside (0,1).
  const auto p37 = paper_polynomial(3, 7);
  REQUIRE(p37.coefficients.size() == 3);
  CHECK(p37.coefficients[0] == 108.0);
  CHECK(p37.coefficients[1] == 24.0);
  CHECK(p37.coefficients[2] == -12.0);
  REQUIRE(p37.roots_in_01.size() == 1);
  CHECK_THAT(p37.roots_in_01[0], WithinAbs((std::sqrt(10.0) - 1.0) / 9.0, 1e-13));
  CHECK_THAT(p37.angles[0], WithinAbs(0.5 * std::acos((2.0 * std::sqrt(10.0) - 11.0) / 9.0),
                                      1e-13));

  // No admissible root at n = 9 (real roots exist only for 3 <= n <= 8).
  CHECK(paper_polynomial(3, 9).roots_in_01.empty());
  // n = 8: both roots negative.
  CHECK(paper_polynomial(3, 8).roots_in_01.empty());

  // r=5, n=11: P3(0) < 0 < P3(1) and exactly one root inside (0,1).
  const auto p511 = paper_polynomial(5, 11);
  const auto& c = p511.coefficients;
  CHECK(c[3] < 0.0);
  CHECK(c[0] + c[1] + c[2] + c[3] > 0.0);
  REQUIRE(p511.roots_in_01.size() == 1);
  CHECK_THAT(p511.roots_in_01[0], WithinAbs((3.0 * std::sqrt(6.0) - 2.0) / 25.0, 1e-12));
  CHECK(paper_polynomial(5, 12).roots_in_01.empty());

  CHECK_THROWS_AS(paper_polynomial(4, 9), polyharm::domain_error);
}

TEST_CASE("critical angle scan reproduces the closed forms") {
  auto entry = find_critical_angles(2, Variant::standard, 5);
  REQUIRE(entry.roots.size() == 1);
  CHECK_THAT(entry.roots[0].a, WithinAbs(kPi / 3.0, 1e-9));
  REQUIRE(entry.roots[0].closed_form.has_value());
  CHECK(entry.roots[0].closed_form->deviation <= 1e-8);
  CHECK(entry.roots[0].theorem == "Thm1.2(i)");
  CHECK(entry.roots[0].residuals.size() == 3);

  auto entry26 = find_critical_angles(2, Variant::standard, 6);
  REQUIRE(entry26.roots.size() == 1);
  CHECK_THAT(entry26.roots[0].a, WithinAbs(0.5 * std::acos(-0.8), 1e-9));

  auto entry49 = find_critical_angles(4, Variant::standard, 9);
  REQUIRE(entry49.roots.size() == 1);
  CHECK_THAT(entry49.roots[0].a,
             WithinAbs(0.5 * std::acos((std::sqrt(105.0) - 19.0) / 16.0), 1e-9));

  // Below the Sobolev threshold nothing is scanned.
  auto entry_bad = find_critical_angles(3, Variant::standard, 6);
  CHECK_FALSE(entry_bad.sobolev_ok);
  CHECK(entry_bad.roots.empty());

  // n = 8 is Sobolev-admissible for r = 3 but carries no critical angle.
  auto entry38 = find_critical_angles(3, Variant::standard, 8);
  CHECK(entry38.sobolev_ok);
  CHECK(entry38.roots.empty());
}

TEST_CASE("roots agree across bumps and routes") {
  // Weak-form root, polynomial root and conjecture pattern must agree
  // pairwise at (r, n) = (3, 7).
  const auto entry = find_critical_angles(3, Variant::standard, 7);
  REQUIRE(entry.roots.size() == 1);
  const double weak = entry.roots[0].a;
  const double poly = paper_polynomial(3, 7).angles[0];
  const double pattern = conjecture_angle(3).a;
  CHECK(std::fabs(weak - poly) <= 1e-8);
  CHECK(std::fabs(weak - pattern) <= 1e-8);
  CHECK(std::fabs(poly - pattern) <= 1e-12);

  // Explicit bump independence at the root.
  const auto mp = ModelPair::ball_to_sphere(7);
  for (const auto& bump : scan_bumps(3)) {
    CHECK(std::fabs(first_variation(weak, bump, mp, {3, Variant::standard})) <= 1e-8);
  }
}

TEST_CASE("ES-variant roots coincide with standard ones") {
  const auto std_entry = find_critical_angles(4, Variant::standard, 9);
  const auto es_entry = find_critical_angles(4, Variant::eells_sampson, 9);
  REQUIRE(std_entry.roots.size() == 1);
  REQUIRE(es_entry.roots.size() == 1);
  CHECK(std::fabs(std_entry.roots[0].a - es_entry.roots[0].a) <= 1e-9);
}

TEST_CASE("dimension scan is exclusive for r = 3") {
  const auto entries = dimension_scan(3, Variant::standard, 7, 10);
  REQUIRE(entries.size() == 4);
  for (const auto& entry : entries) {
    if (entry.n == 7) {
      CHECK(entry.roots.size() == 1);
    } else {
      CHECK(entry.roots.empty());
    }
  }
  CHECK_THROWS_AS(dimension_scan(3, Variant::standard, 7, 41), polyharm::domain_error);
}
