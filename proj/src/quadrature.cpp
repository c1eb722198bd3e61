#include "tidaleq/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tidaleq {

namespace {

Rule1D compute_gauss_legendre(int n) {
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on the three-term recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

Rule1D gauss_jacobi_unit(int n, double beta) {
  if (n < 1 || !(beta > -1.0)) throw std::invalid_argument("gauss_jacobi_unit: bad arguments");
  // monic recurrence for (1+x)^beta on [-1, 1]
  const double a = 0.0, b = beta;
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    const double bk = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub[k - 1] = std::sqrt(bk);
  }
  const double mu0 =
      std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  Rule1D out;
  out.x.resize(n);
  out.w.resize(n);
  if (n == 1) {
    out.x[0] = 0.5 * (1.0 + diag[0]);
    out.w[0] = mu0 * std::pow(2.0, -b - 1.0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  const double scale = std::pow(2.0, -b - 1.0);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    out.x[i] = 0.5 * (1.0 + es.eigenvalues()[i]);
    out.w[i] = scale * mu0 * v * v;
  }
  return out;
}

Rule1D composite_rule(const std::vector<double>& breaks, int pts) {
  const Rule1D& gl = gauss_legendre(pts);
  Rule1D out;
  out.x.reserve((breaks.size() - 1) * pts);
  out.w.reserve((breaks.size() - 1) * pts);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(b > a)) continue;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int k = 0; k < pts; ++k) {
      out.x.push_back(c + h * gl.x[k]);
      out.w.push_back(h * gl.w[k]);
    }
  }
  return out;
}

std::vector<double> graded_breaks(double a, double b, int uniform, int levels_left,
                                  int levels_right) {
  std::vector<double> br;
  const double h = (b - a) / uniform;
  // left end: a, a + h 2^-L, ..., a + h/2, a + h
  br.push_back(a);
  for (int j = levels_left; j >= 1; --j) br.push_back(a + h * std::ldexp(1.0, -j));
  for (int k = 1; k < uniform; ++k) br.push_back(a + k * h);
  for (int j = 1; j <= levels_right; ++j) br.push_back(b - h * std::ldexp(1.0, -j));
  br.push_back(b);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

std::vector<double> join_breaks(const std::vector<double>& lhs, const std::vector<double>& rhs) {
  std::vector<double> out = lhs;
  for (double v : rhs)
    if (out.empty() || v > out.back()) out.push_back(v);
  return out;
}

}  // namespace tidaleq
