#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "tidaleq/errors.hpp"
#include "tidaleq/kernel.hpp"

using namespace tidaleq;

TEST_CASE("rigid preset") {
  CHECK(rigid_preset(1.0).eval(0.37) == -2.0);
  CHECK(rigid_preset(1.0).d1(5.0) == 0.0);
  CHECK(rigid_preset(0.5).eval(-1.0) == -1.0);
  CHECK(rigid_preset(1.0).monotone_certified());
  CHECK(rigid_preset(1.0).is_constant());
  CHECK_THROWS_AS(rigid_preset(0.0), DomainError);
  CHECK_THROWS_AS(rigid_preset(-1.0), DomainError);
}

TEST_CASE("affine preset rejects decreasing G") {
  const auto G = affine_preset(-2.0, 0.5);
  CHECK(G.eval(2.0) == doctest::Approx(-1.0));
  CHECK(G.d1(7.0) == 0.5);
  CHECK_FALSE(G.is_constant());
  CHECK_THROWS_AS(affine_preset(0.0, -1.0), DomainError);
}

namespace {
// derivative evaluators agree with central differences, error O(step^2)
void check_derivatives(const VorticityProfile& G, double lo, double hi) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(lo, hi);
  for (int i = 0; i < 50; ++i) {
    const double u = U(rng);
    for (int k = 0; k < 3; ++k) {
      auto f = [&](double x) { return k == 0 ? G.eval(x) : k == 1 ? G.d1(x) : G.d2(x); };
      auto df = [&](double x) { return k == 0 ? G.d1(x) : k == 1 ? G.d2(x) : G.d3(x); };
      const double e1 = std::abs((f(u + 1e-3) - f(u - 1e-3)) / 2e-3 - df(u));
      const double e2 = std::abs((f(u + 5e-4) - f(u - 5e-4)) / 1e-3 - df(u));
      // second order: halving the step quarters the error (or both are at rounding level)
      CHECK((e2 < 1e-7 || e2 < 0.3 * e1));
    }
  }
}
}  // namespace

TEST_CASE("finite differences match derivative evaluators") {
  check_derivatives(affine_preset(-1.0, 2.0), -3.0, 3.0);
  std::vector<double> u, g;
  for (int i = 0; i <= 40; ++i) {
    const double x = -2.0 + 0.1 * i;
    u.push_back(x);
    g.push_back(std::tanh(x) + 0.2 * x);
  }
  const auto T = tabulated_profile(u, g);
  // away from knots the Hermite cubic is smooth
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> K(0, 39);
  std::uniform_real_distribution<double> U(0.2, 0.8);
  for (int i = 0; i < 40; ++i) {
    const double x = u[K(rng)] + 0.1 * U(rng);
    const double fd = (T.eval(x + 1e-5) - T.eval(x - 1e-5)) / 2e-5;
    CHECK(fd == doctest::Approx(T.d1(x)).epsilon(1e-6));
    const double fd2 = (T.d1(x + 1e-5) - T.d1(x - 1e-5)) / 2e-5;
    CHECK(fd2 == doctest::Approx(T.d2(x)).epsilon(1e-5));
  }
}

TEST_CASE("tabulated profile: interpolates, stays monotone, rejects bad data") {
  const auto T = tabulated_profile({0.0, 1.0, 2.0, 3.0}, {0.0, 0.1, 2.0, 2.1});
  CHECK(T.eval(2.0) == doctest::Approx(2.0));
  CHECK(check_monotone(T, -1.0, 4.0));
  CHECK(T.monotone_certified());
  CHECK_THROWS_AS(tabulated_profile({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(tabulated_profile({0.0, 0.0}, {0.0, 1.0}), DomainError);
}

TEST_CASE("profile CSV ingestion") {
  const auto dir = std::filesystem::temp_directory_path() / "tidaleq_kernel_test";
  std::filesystem::create_directories(dir);
  const auto good = (dir / "good.csv").string(), bad = (dir / "bad.csv").string();
  std::ofstream(good) << "u,G\n-1,-3\n0,-2\n1,-1.5\n";
  std::ofstream(bad) << "u,G\n-1,-3\n0,-2\n1,-2.5\n";
  const auto G = load_profile_csv(good);
  CHECK(G.eval(0.0) == doctest::Approx(-2.0));
  // corrupted (non-monotone) table is rejected at ingestion
  CHECK_THROWS(load_profile_csv(bad));
  CHECK_THROWS_AS(load_profile_csv((dir / "missing.csv").string()), ConfigError);
}
