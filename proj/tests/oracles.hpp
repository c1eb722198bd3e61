// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerics.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Gauss-Legendre on [-1, 1] by Newton on P_n (own copy).
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Radial primitive of rho * K(rho): Case A (nu > 0) K = -rho^-nu, Case B (nu = 0) K = ln rho.
inline double ray_primitive(double nu, double L) {
  if (L <= 0.0) return 0.0;
  if (nu == 0.0) return 0.5 * L * L * std::log(L) - 0.25 * L * L;
  return -std::pow(L, 2.0 - nu) / (2.0 - nu);
}

// U0(r) by integrating along rays from x = (r, 0): a 1D smooth integral.
inline double u0_ray(double nu, double r) {
  if (r < 1.0) {
    const int n = 4000;  // periodic, smooth: trapezoid
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * pi * j / n;
      const double L = -r * std::cos(th) + std::sqrt(1.0 - r * r * std::sin(th) * std::sin(th));
      s += ray_primitive(nu, L);
    }
    return s * 2.0 * pi / n;
  }
  // exterior: rays towards the disk, sin t = sin(tm) sin(tau)
  std::vector<double> x, w;
  gauss_legendre(400, x, w);
  const double stm = 1.0 / r;
  double s = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double tau = 0.5 * pi * x[k];
    const double st = stm * std::sin(tau);
    const double ct = std::sqrt(1.0 - st * st);
    const double root = std::cos(tau);
    const double L1 = r * ct - root, L2 = r * ct + root;
    const double dt = stm * std::cos(tau) / ct;
    s += 0.5 * pi * w[k] * dt * (ray_primitive(nu, L2) - ray_primitive(nu, L1));
  }
  return s;
}

struct McEstimate {
  double mean, stderr_;
};

// Monte Carlo for Case A: rho uniform on [0, r + 1] along a uniform direction
// from x, rejecting points outside the disk. The estimator is bounded.
inline McEstimate u0_monte_carlo(double nu, double r, long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double R = r + 1.0;
  double s = 0.0, s2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    const double th = 2.0 * pi * U(rng), rho = R * U(rng);
    const double y1 = r + rho * std::cos(th), y2 = rho * std::sin(th);
    double v = 0.0;
    if (y1 * y1 + y2 * y2 < 1.0) v = -2.0 * pi * R * std::pow(rho, 1.0 - nu);
    s += v;
    s2 += v * v;
  }
  const double mean = s / samples;
  const double var = std::max(0.0, s2 / samples - mean * mean);
  return {mean, var < 1e-20 * mean * mean ? 0.0 : std::sqrt(var / (samples - 1))};
}

// c~_k of the power kernel and gamma0 in closed form.
inline double ctilde(double nu, int k) {
  const double lg = std::lgamma(k + nu / 2) - std::lgamma(k + 2 - nu / 2);
  return pi / 2 * std::tgamma(2 - nu) / (std::tgamma(nu / 2) * std::tgamma(2 - nu / 2)) * std::exp(lg);
}
inline double c_power(double nu, int n) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += ctilde(nu, k);
  return nu * s - 2.0 * (n + 1) * ctilde(nu, n);
}
inline double gamma0_closed(double nu) {
  return pi / 2 * std::tgamma(2 - nu) / (std::tgamma(nu / 2) * std::tgamma(2 - nu / 2));
}

// Classical RK4 for y' = F(r, y) on [r0, r1] with n steps.
using Vec = std::vector<double>;
inline Vec rk4(const std::function<Vec(double, const Vec&)>& F, Vec y, double r0, double r1, int n) {
  const double h = (r1 - r0) / n;
  auto axpy = [](const Vec& a, double s, const Vec& b) {
    Vec o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] + s * b[i];
    return o;
  };
  for (int i = 0; i < n; ++i) {
    const double r = r0 + i * h;
    const Vec k1 = F(r, y), k2 = F(r + h / 2, axpy(y, h / 2, k1)), k3 = F(r + h / 2, axpy(y, h / 2, k2)),
              k4 = F(r + h, axpy(y, h, k3));
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return y;
}

// phi'' + phi'/r = G(phi), phi'(0) = 0: shoot on phi(0) with secant steps.
// Returns {phi(0), phi'(1)}.
inline std::pair<double, double> phi0_shoot(const std::function<double(double)>& G, double guess, int steps) {
  const double r0 = 1e-4;
  auto end = [&](double c) {
    // series start phi = c + G(c) r^2 / 4
    Vec y = {c + G(c) * r0 * r0 / 4, G(c) * r0 / 2};
    auto F = [&](double r, const Vec& v) { return Vec{v[1], G(v[0]) - v[1] / r}; };
    return rk4(F, y, r0, 1.0, steps);
  };
  double a = guess, b = guess + 0.1;
  double fa = end(a)[0], fb = end(b)[0];
  for (int it = 0; it < 60 && std::abs(fb) > 1e-15; ++it) {
    const double c = b - fb * (b - a) / (fb - fa);
    a = b;
    fa = fb;
    b = c;
    fb = end(b)[0];
  }
  return {b, end(b)[1]};
}

// Map evaluation by direct power sums.
inline cplx fmap(const std::vector<cplx>& g, double g0, cplx w, cplx* fp) {
  cplx f = w * (1.0 + g0), d = 1.0 + g0, wp = w;
  for (std::size_t n = 1; n <= g.size(); ++n) {
    f += g[n - 1] * wp * w;
    d += double(n + 1) * g[n - 1] * wp;
    wp *= w;
  }
  if (fp) *fp = d;
  return f;
}

// U_h(f(e^{i phi})) = int_D K(|f(e^{i phi}) - f(y)|) |f'(y)|^2 dy in polar
// coordinates about the boundary point, rho = L s^2 to soften the singularity.
inline double boundary_potential_polar(const std::vector<cplx>& g, double g0, double nu, double phi,
                                       int ns = 100, int npsi = 400) {
  std::vector<double> xs, ws, xp, wp;
  gauss_legendre(ns, xs, ws);
  gauss_legendre(npsi, xp, wp);
  const cplx w0 = std::polar(1.0, phi);
  const cplx x = fmap(g, g0, w0, nullptr);
  double acc = 0.0;
  for (int a = 0; a < npsi; ++a) {
    const double th = 0.5 * pi * xp[a];
    const double L = 2.0 * std::cos(th);
    const cplx dir = -w0 * std::polar(1.0, th);
    for (int b = 0; b < ns; ++b) {
      const double s = 0.5 * (1.0 + xs[b]);
      const double rho = L * s * s;
      cplx fp;
      const cplx y = fmap(g, g0, w0 + rho * dir, &fp);
      const double d = std::abs(x - y);
      const double K = nu == 0.0 ? std::log(d) : -std::pow(d, -nu);
      acc += 0.5 * pi * wp[a] * 0.5 * ws[b] * 2.0 * L * s * rho * K * std::norm(fp);
    }
  }
  return acc;
}

// Closed polygon crossing test by orientation signs, O(M^2).
inline bool self_intersects(const std::vector<cplx>& p) {
  const int M = int(p.size());
  auto orient = [](cplx a, cplx b, cplx c) {
    const double v = (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
    return (v > 0) - (v < 0);
  };
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      if (j == i + 1 || (i == 0 && j == M - 1)) continue;
      const cplx a = p[i], b = p[(i + 1) % M], c = p[j], d = p[(j + 1) % M];
      if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) return true;
    }
  return false;
}

}  // namespace oracle
