#include "tidaleq/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "tidaleq/errors.hpp"
#include "tidaleq/fft.hpp"

namespace tidaleq {

cplx ShapeCoeffs::coeff(int n) const {
  if (n == 0) return g0_;
  if (n < 0) throw DomainError("ShapeCoeffs: negative index");
  return n <= N() ? gn_[n - 1] : cplx(0.0);
}

void ShapeCoeffs::set(int n, cplx v) {
  if (n == 0) {
    if (v.imag() != 0.0) throw DomainError("ShapeCoeffs: g0 must be real");
    g0_ = v.real();
    return;
  }
  if (n < 0) throw DomainError("ShapeCoeffs: negative index");
  if (n > N()) gn_.resize(n, cplx(0.0));
  gn_[n - 1] = v;
}

double ShapeCoeffs::max_abs() const {
  double m = std::abs(g0_);
  for (const auto& v : gn_) m = std::max(m, std::abs(v));
  return m;
}

double ShapeCoeffs::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : gn_) m = std::max(m, std::abs(v.imag()));
  return m;
}

ShapeCoeffs& ShapeCoeffs::operator+=(const ShapeCoeffs& o) {
  if (o.N() > N()) resize(o.N());
  g0_ += o.g0_;
  for (int n = 0; n < o.N(); ++n) gn_[n] += o.gn_[n];
  return *this;
}

ShapeCoeffs& ShapeCoeffs::operator-=(const ShapeCoeffs& o) {
  if (o.N() > N()) resize(o.N());
  g0_ -= o.g0_;
  for (int n = 0; n < o.N(); ++n) gn_[n] -= o.gn_[n];
  return *this;
}

ShapeCoeffs& ShapeCoeffs::operator*=(double s) {
  g0_ *= s;
  for (auto& v : gn_) v *= s;
  return *this;
}

ShapeCoeffs operator+(ShapeCoeffs a, const ShapeCoeffs& b) { return a += b; }
ShapeCoeffs operator-(ShapeCoeffs a, const ShapeCoeffs& b) { return a -= b; }
ShapeCoeffs operator*(double s, ShapeCoeffs a) { return a *= s; }

std::vector<cplx> xi_coeffs(const ShapeCoeffs& h) {
  std::vector<cplx> xi(h.N() + 1);
  xi[0] = 2.0 * h.g0();
  for (int n = 1; n <= h.N(); ++n) xi[n] = h.coeff(n);
  return xi;
}

CircleValues eval_circle(const ShapeCoeffs& h, int M, double rho) {
  const int N = h.N();
  if (N + 2 > M) throw DomainError("eval_circle: grid too coarse for the truncation");
  // f = sum_k a_k z^k with a_1 = 1 + g0, a_{n+1} = g_n
  std::vector<cplx> a(N + 2, 0.0);
  a[1] = 1.0 + h.g0();
  for (int n = 1; n <= N; ++n) a[n + 1] = h.coeff(n);
  std::vector<cplx> bf(M, 0.0), bp(M, 0.0), bpp(M, 0.0);
  double rj = 1.0;  // rho^j
  for (int j = 0; j < N + 2; ++j) {
    bf[j] = a[j] * rj;
    if (j + 1 < N + 2) bp[j] = (j + 1.0) * a[j + 1] * rj;
    if (j + 2 < N + 2) bpp[j] = (j + 2.0) * (j + 1.0) * a[j + 2] * rj;
    rj *= rho;
  }
  return CircleValues{dft_backward(bf), dft_backward(bp), dft_backward(bpp)};
}

CircleValues eval_boundary(const ShapeCoeffs& h, int M) {
  if (M < 2 * h.N() + 2) throw DomainError("eval_boundary: need M >= 2N + 2");
  return eval_circle(h, M, 1.0);
}

double injectivity_margin(const ShapeCoeffs& h, int M) {
  if (M <= 0) M = std::max(512, 8 * (h.N() + 2));
  // h = f - z, h' = f' - 1
  const CircleValues v = eval_circle(h, M, 1.0);
  double worst = 0.0;
  for (int j = 0; j < M; ++j) {
    const cplx z = std::polar(1.0, 2.0 * M_PI * j / M);
    worst = std::max(worst, std::abs(v.f[j] - z) + std::abs(v.fp[j] - 1.0));
  }
  return 1.0 / std::sqrt(2.0) - worst;
}

double area(const ShapeCoeffs& h) {
  double s = std::norm(1.0 + h.g0());
  for (int n = 1; n <= h.N(); ++n) s += (n + 1.0) * std::norm(h.coeff(n));
  return M_PI * s;
}

BoundarySpectrum analyze(const std::vector<double>& samples, int N) {
  const int M = static_cast<int>(samples.size());
  if (N < 0) N = M / 2 - 1;
  if (N >= M / 2 + (M % 2)) throw DomainError("analyze: N exceeds the grid's band limit");
  std::vector<cplx> in(samples.begin(), samples.end());
  const std::vector<cplx> out = dft_forward(in);
  BoundarySpectrum S(N);
  for (int n = 0; n <= N; ++n) S.s[n] = out[n] / double(M);
  S.s[0] = S.s[0].real();
  return S;
}

std::vector<double> synthesize(const BoundarySpectrum& S, int M) {
  if (2 * S.N() >= M) throw DomainError("synthesize: grid too coarse for the spectrum");
  std::vector<cplx> in(M, 0.0);
  in[0] = S.s[0].real();
  for (int n = 1; n <= S.N(); ++n) {
    in[n] = S.s[n];
    in[M - n] = std::conj(S.s[n]);
  }
  const std::vector<cplx> out = dft_backward(in);
  std::vector<double> r(M);
  for (int j = 0; j < M; ++j) r[j] = out[j].real();
  return r;
}

}  // namespace tidaleq
