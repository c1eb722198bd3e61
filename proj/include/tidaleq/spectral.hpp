#pragma once

#include <complex>
#include <vector>

namespace tidaleq {

using cplx = std::complex<double>;

/// h(z) = g0 z + sum_{n=1..N} g_n z^{n+1}, so f_h = z + h keeps h(0) = 0 and
/// h'(0) = g0 real.
class ShapeCoeffs {
 public:
  ShapeCoeffs() = default;
  explicit ShapeCoeffs(int N) : gn_(N, cplx(0.0)) {}

  int N() const { return static_cast<int>(gn_.size()); }
  double g0() const { return g0_; }
  void set_g0(double v) { g0_ = v; }
  /// n = 0 returns g0; 1 <= n <= N the complex coefficient; beyond N zero.
  cplx coeff(int n) const;
  void set(int n, cplx v);
  void resize(int N) { gn_.resize(N, cplx(0.0)); }

  double max_abs() const;
  double max_abs_imag() const;

  ShapeCoeffs& operator+=(const ShapeCoeffs& o);
  ShapeCoeffs& operator-=(const ShapeCoeffs& o);
  ShapeCoeffs& operator*=(double s);

 private:
  double g0_ = 0.0;
  std::vector<cplx> gn_;
};

ShapeCoeffs operator+(ShapeCoeffs a, const ShapeCoeffs& b);
ShapeCoeffs operator-(ShapeCoeffs a, const ShapeCoeffs& b);
ShapeCoeffs operator*(double s, ShapeCoeffs a);

/// Fourier coefficients S_n, n = 0..N, of a real function on the circle,
/// S(phi) = S_0 + 2 Re sum_{n>=1} S_n e^{i n phi}.
struct BoundarySpectrum {
  std::vector<cplx> s;
  BoundarySpectrum() = default;
  explicit BoundarySpectrum(int N) : s(N + 1, cplx(0.0)) {}
  int N() const { return static_cast<int>(s.size()) - 1; }
};

/// xi_0 = 2 g0, xi_n = g_n (n >= 1); index 0..N.
std::vector<cplx> xi_coeffs(const ShapeCoeffs& h);

struct CircleValues {
  std::vector<cplx> f;    // f_h(rho e^{i phi_j})
  std::vector<cplx> fp;   // f_h'
  std::vector<cplx> fpp;  // f_h''
};

/// f_h, f_h', f_h'' at rho e^{2 pi i j / M}, j = 0..M-1 (FFT synthesis).
CircleValues eval_circle(const ShapeCoeffs& h, int M, double rho = 1.0);
/// Boundary values; requires M >= 2N + 2.
CircleValues eval_boundary(const ShapeCoeffs& h, int M);

/// 1/sqrt(2) - max_j (|h| + |h'|) on the boundary. M = 0 picks a fine grid.
double injectivity_margin(const ShapeCoeffs& h, int M = 0);

/// |f_h(D)| = pi (|1 + g0|^2 + sum (n+1) |g_n|^2).
double area(const ShapeCoeffs& h);

/// Uniform samples on the circle -> S_n for n = 0..N (default M/2 - 1).
BoundarySpectrum analyze(const std::vector<double>& samples, int N = -1);
std::vector<double> synthesize(const BoundarySpectrum& S, int M);

}  // namespace tidaleq
