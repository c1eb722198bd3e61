#include <doctest.h>

#include <cmath>

#include "tidaleq/chebyshev.hpp"
#include "tidaleq/fft.hpp"
#include "tidaleq/quadrature.hpp"

using namespace tidaleq;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1") {
  for (int n : {4, 12, 40}) {
    const Rule1D& r = gauss_legendre(n);
    for (int k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(r.x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("Gauss-Jacobi moments against the Beta function") {
  for (double beta : {0.0, 0.5, -0.5, 1.0}) {
    const Rule1D r = gauss_jacobi_unit(10, beta);
    for (int k = 0; k < 20; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
      CHECK(s == doctest::Approx(1.0 / (k + beta + 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("graded composite rule handles an endpoint singularity") {
  const auto br = graded_breaks(0.0, 1.0, 4, 40, 0);
  const Rule1D r = composite_rule(br, 12);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::log(r.x[i]);
  CHECK(s == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Chebyshev differentiation is exact for polynomials") {
  const RadialGrid& g = *radial_grid(32);
  const auto& r = g.r();
  Eigen::VectorXd even(r.size()), odd(r.size());
  for (int i = 0; i < r.size(); ++i) {
    even[i] = std::pow(r[i], 4);
    odd[i] = std::pow(r[i], 5);
  }
  const Eigen::VectorXd de = g.d1(1) * even, dd = g.d2(-1) * odd;
  for (int i = 0; i < r.size(); ++i) {
    CHECK(de[i] == doctest::Approx(4 * std::pow(r[i], 3)).epsilon(1e-11));
    CHECK(dd[i] == doctest::Approx(20 * std::pow(r[i], 3)).epsilon(1e-10));
  }
  CHECK(g.interpolate(even, 1, 0.3) == doctest::Approx(std::pow(0.3, 4)).epsilon(1e-12));
}

TEST_CASE("FFT conventions") {
  std::vector<cplx> x(8);
  for (int j = 0; j < 8; ++j) x[j] = std::polar(1.0, 2.0 * M_PI * 3 * j / 8);
  const auto X = dft_forward(x);
  CHECK(std::abs(X[3] - 8.0) < 1e-12);
  const auto y = dft_backward(X);
  for (int j = 0; j < 8; ++j) CHECK(std::abs(y[j] / 8.0 - x[j]) < 1e-14);
}
