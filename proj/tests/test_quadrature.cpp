#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polyharm/quadrature.hpp"
#include "polyharm/ring.hpp"

using polyharm::integrate_unit;
using polyharm::Perturbation2;
using polyharm::QuadOptions;
using Catch::Matchers::WithinAbs;

TEST_CASE("monomials integrate to 1/(p+1)") {
  // The Sobolev-exponent integrals reduce to these: rho^(n-4k-1) with n = 7,
  // k = 1 gives the canonical 1/3 case.
  for (int p : {0, 1, 2, 3, 6, 10, 15}) {
    const auto res = integrate_unit<double>([&](double x) { return std::pow(x, p); });
    CHECK_THAT(res.value, WithinAbs(1.0 / (p + 1), 1e-12));
    CHECK(res.error_estimate < 1e-10);
  }
}

TEST_CASE("endpoint-degenerate but bounded integrands") {
  const auto a = integrate_unit<double>([](double x) { return std::sqrt(x); });
  CHECK_THAT(a.value, WithinAbs(2.0 / 3.0, 1e-12));
  const auto b = integrate_unit<double>([](double x) { return std::pow(1.0 - x, 1.5); });
  CHECK_THAT(b.value, WithinAbs(0.4, 1e-12));
  const auto c =
      integrate_unit<double>([](double x) { return std::sqrt(x) * std::sqrt(1.0 - x); });
  CHECK_THAT(c.value, WithinAbs(3.141592653589793 / 8.0, 1e-12));
}

TEST_CASE("smooth transcendental integrand") {
  const auto res = integrate_unit<double>([](double x) { return std::exp(x); });
  CHECK_THAT(res.value, WithinAbs(std::exp(1.0) - 1.0, 1e-13));
}

TEST_CASE("perturbation slots integrate independently") {
  // Integrand slots (x^2, x^3, x^4) must integrate to (1/3, 1/4, 1/5).
  const auto res = integrate_unit<Perturbation2>([](double x) {
    return Perturbation2{x * x, x * x * x, x * x * x * x};
  });
  CHECK_THAT(res.value.v0, WithinAbs(1.0 / 3.0, 1e-12));
  CHECK_THAT(res.value.v1, WithinAbs(1.0 / 4.0, 1e-12));
  CHECK_THAT(res.value.v2, WithinAbs(1.0 / 5.0, 1e-12));
}

TEST_CASE("compensated summation changes nothing on tame integrands") {
  QuadOptions opt;
  opt.compensated = true;
  const auto plain = integrate_unit<double>([](double x) { return std::cos(3.0 * x); });
  const auto comp = integrate_unit<double>([](double x) { return std::cos(3.0 * x); }, opt);
  CHECK_THAT(comp.value, WithinAbs(plain.value, 1e-14));
  CHECK_THAT(comp.value, WithinAbs(std::sin(3.0) / 3.0, 1e-13));
}

TEST_CASE("unresolvable oscillation raises an accuracy error") {
  bool threw = false;
  try {
    integrate_unit<double>([](double x) { return std::sin(1e7 * x); });
  } catch (const polyharm::accuracy_error& e) {
    threw = true;
    CHECK(e.achieved() > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("abscissas never touch the endpoints") {
  integrate_unit<double>([](double x) {
    REQUIRE(x >= polyharm::kRhoClampLo);
    REQUIRE(x <= polyharm::kRhoClampHi);
    return 1.0;
  });
}
