#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polyharm/roots.hpp"

using namespace polyharm;
using Catch::Matchers::WithinAbs;

TEST_CASE("brent locates a transcendental root") {
  auto f = [](double x) { return std::cos(x) - x; };
  const double root = brent_root(f, 0.0, 1.0, f(0.0), f(1.0), 1e-14);
  CHECK_THAT(root, WithinAbs(0.7390851332151607, 1e-12));
  CHECK_THROWS_AS(brent_root(f, 2.0, 3.0, f(2.0), f(3.0), 1e-14), polyharm::domain_error);
}

TEST_CASE("quadratic roots") {
  const auto two = real_roots_quadratic(1.0, -3.0, 2.0);
  REQUIRE(two.size() == 2);
  CHECK_THAT(two[0], WithinAbs(1.0, 1e-14));
  CHECK_THAT(two[1], WithinAbs(2.0, 1e-14));
  CHECK(real_roots_quadratic(1.0, 0.0, 1.0).empty());
  const auto linear = real_roots_quadratic(0.0, 2.0, -5.0);
  REQUIRE(linear.size() == 1);
  CHECK_THAT(linear[0], WithinAbs(2.5, 1e-14));
  // Catastrophic-cancellation regime.
  const auto skew = real_roots_quadratic(1.0, -1e8, 1.0);
  REQUIRE(skew.size() == 2);
  CHECK_THAT(skew[0], WithinAbs(1e-8, 1e-16));
}

TEST_CASE("cubic roots across discriminant branches") {
  // (x-1)(x-2)(x-3)
  const auto three = real_roots_cubic(1.0, -6.0, 11.0, -6.0);
  REQUIRE(three.size() == 3);
  CHECK_THAT(three[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(three[1], WithinAbs(2.0, 1e-12));
  CHECK_THAT(three[2], WithinAbs(3.0, 1e-12));
  // One real root.
  const auto one = real_roots_cubic(1.0, 0.0, 0.0, -8.0);
  REQUIRE(one.size() == 1);
  CHECK_THAT(one[0], WithinAbs(2.0, 1e-13));
  // Triple root.
  const auto triple = real_roots_cubic(1.0, -3.0, 3.0, -1.0);
  REQUIRE(!triple.empty());
  CHECK_THAT(triple.front(), WithinAbs(1.0, 1e-6));
  // Degenerate leading coefficient falls through to the quadratic.
  const auto quad = real_roots_cubic(0.0, 1.0, -3.0, 2.0);
  REQUIRE(quad.size() == 2);
}

TEST_CASE("cubic roots survive large coefficient spreads") {
  // 5000 x^3 + 9800 x^2 + 1040 x - 720, the kind of polynomial produced by
  // the criticality reductions; its root in (0,1) is (3 sqrt 6 - 2)/25.
  const auto roots = real_roots_cubic(5000.0, 9800.0, 1040.0, -720.0);
  bool found = false;
  for (double x : roots)
    if (x > 0.0 && x < 1.0) {
      found = true;
      CHECK_THAT(x, WithinAbs((3.0 * std::sqrt(6.0) - 2.0) / 25.0, 1e-12));
    }
  CHECK(found);
}
