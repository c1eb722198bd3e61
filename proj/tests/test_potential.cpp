#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tidaleq/errors.hpp"
#include "tidaleq/potential.hpp"

using namespace tidaleq;
using std::numbers::pi;

TEST_CASE("Case B closed forms") {
  const auto B = InteractionCase::log();
  CHECK(u0(B, 1.0) == doctest::Approx(0.0));
  CHECK(u0(B, std::exp(1.0)) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(u0_d1(B, 2.0) == doctest::Approx(pi / 2));
  CHECK(u0_d2(B, 2.0) == doctest::Approx(-pi / 4));
  CHECK_THROWS_AS(u0_d1(B, 1.0), DomainError);
  // quadrature path with the log kernel matches the closed form
  for (double r : {0.0, 0.4, 1.0, 1.7, 4.0}) CHECK(std::abs(u0_quadrature(B, r) - u0(B, r)) < 1e-8);
  CHECK(std::abs(u0_quadrature(B, 2.5, 1) - pi / 2.5) < 1e-8);
  CHECK(std::abs(u0_quadrature(B, 2.5, 2) + pi / 6.25) < 1e-8);
}

TEST_CASE("Case A against the ray-integral oracle") {
  CHECK(std::abs(u0(InteractionCase::power(1.0), 0.0) + 2.0 * pi) < 1e-8);
  for (double nu : {1.0, 0.5, 0.25}) {
    const auto A = InteractionCase::power(nu);
    for (double r : {0.0, 0.3, 0.9, 1.0, 1.2, 3.0, 5.0}) {
      const double ref = r == 1.0 ? 0.5 * (oracle::u0_ray(nu, 1.0 - 1e-7) + oracle::u0_ray(nu, 1.0 + 1e-7))
                                  : oracle::u0_ray(nu, r);
      CHECK(u0(A, r) == doctest::Approx(ref).epsilon(r == 1.0 ? 1e-6 : 1e-10));
    }
    for (double r : {1.5, 3.0, 6.0}) {
      const double h = 1e-3;
      const double d1 = (oracle::u0_ray(nu, r + h) - oracle::u0_ray(nu, r - h)) / (2 * h);
      const double d2 = (oracle::u0_ray(nu, r + h) - 2 * oracle::u0_ray(nu, r) + oracle::u0_ray(nu, r - h)) / (h * h);
      CHECK(u0_d1(A, r) == doctest::Approx(d1).epsilon(1e-6));
      CHECK(u0_d2(A, r) == doctest::Approx(d2).epsilon(1e-4));
    }
  }
  CHECK(u0_d1(InteractionCase::power(1.0), 3.0) > 0.0);
}

TEST_CASE("Case A against Monte Carlo, 1e7 samples, 3 standard errors") {
  for (double nu : {1.0, 0.5}) {
    const auto A = InteractionCase::power(nu);
    int k = 0;
    for (double r : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const auto mc = oracle::u0_monte_carlo(nu, r, 10'000'000, 1000 + k++);
      if (mc.stderr_ == 0.0) {
        CHECK(u0(A, r) == doctest::Approx(mc.mean).epsilon(1e-9));
      } else {
        CHECK(std::abs(u0(A, r) - mc.mean) < 3.0 * mc.stderr_);
      }
    }
  }
}

TEST_CASE("exterior monotonicity properties on (1, 10]") {
  for (const auto& c : {InteractionCase::power(0.5), InteractionCase::power(1.0), InteractionCase::log()}) {
    double prev = HUGE_VAL;
    for (int k = 1; k <= 40; ++k) {
      const double r = 1.0 + 9.0 * k / 40.0;
      const double d1 = u0_d1(c, r), d2 = u0_d2(c, r);
      CHECK(d1 > 0.0);
      CHECK(d2 < 0.0);
      CHECK(d1 / r < prev);
      prev = d1 / r;
    }
  }
}

TEST_CASE("multipole series: printed constant is off, calibrated one matches") {
  const double cal = calibrate_series_prefactor(2.0);
  CHECK(cal == doctest::Approx(-8.0 / pi).epsilon(1e-9));
  const auto A = InteractionCase::power(1.0);
  for (double r : {1.5, 2.0, 3.3, 5.0}) {
    CHECK(std::abs(u0_series_nu1(r, cal) - u0(A, r)) < 1e-4);
    CHECK(std::abs(u0_series_nu1(r, kPrintedSeriesPrefactor) - u0(A, r)) > 0.1);
  }
}

TEST_CASE("omega0 <-> a0") {
  const auto B = InteractionCase::log();
  CHECK(omega_from_a0(B, 2.0) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-14));
  CHECK(a0_from_omega(B, std::sqrt(pi) / 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(a0_from_omega(B, 10.0), DomainError);
  CHECK_THROWS_AS(omega_from_a0(B, 0.5), DomainError);
  for (const auto& c : {B, InteractionCase::power(1.0), InteractionCase::power(0.5)}) {
    CHECK(omega_from_a0(c, 2.0) > omega_from_a0(c, 3.0));
    double prev = HUGE_VAL;
    for (double a : {2.0, 5.0, 20.0, 100.0, 1000.0}) {
      CHECK(omega_from_a0(c, a) < prev);
      prev = omega_from_a0(c, a);
    }
    CHECK(prev < 0.06);
    for (double a : {2.0, 2.5, 4.0}) {
      const double w = omega_from_a0(c, a);
      CHECK(std::abs(a0_from_omega(c, w) - a) < 1e-10);
      CHECK(std::abs(omega_from_a0(c, a0_from_omega(c, w)) - w) < 1e-12);
    }
  }
  // admissible lower bound is configurable
  CHECK(a0_from_omega(B, 1.0, 1.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("base state") {
  const auto B = InteractionCase::log();
  const BaseState b = make_base_state(B, 2.0, rigid_preset(std::sqrt(pi) / 2));
  CHECK(b.dphi0_at_1 == doctest::Approx(-std::sqrt(pi) / 2).epsilon(1e-12));
  CHECK(std::abs(b.lambda0) < 1e-12);
  CHECK(b.omega0 * b.omega0 * b.a0 == doctest::Approx(u0_d1(B, b.a0)).epsilon(1e-14));
  CHECK(b.lambda0 == doctest::Approx(0.5 * b.dphi0_at_1 * b.dphi0_at_1 - 0.5 * b.omega0 * b.omega0 + b.u0_at_1));
  CHECK_THROWS_AS(make_base_state(B, 2.0, constant_profile(0.0)), DegenerateBaseError);
  CHECK_THROWS_AS(make_base_state(B, 1.8, rigid_preset(1.0)), DomainError);
  CHECK_THROWS_AS(InteractionCase::power(1.5), DomainError);
  CHECK_THROWS_AS(InteractionCase::power(0.0), DomainError);
}
