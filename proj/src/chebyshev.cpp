#include "tidaleq/chebyshev.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tidaleq {

RadialGrid::RadialGrid(int nodes) : total_(nodes) {
  if (nodes < 8 || nodes % 2 != 0)
    throw std::invalid_argument("RadialGrid: node count must be even and >= 8");
  const int N = nodes - 1;
  xfull_.resize(N + 1);
  for (int j = 0; j <= N; ++j)
    xfull_[j] = std::sin(std::numbers::pi * (N - 2.0 * j) / (2.0 * N));

  Eigen::MatrixXd D(N + 1, N + 1);
  auto c = [N](int i) { return ((i == 0 || i == N) ? 2.0 : 1.0) * ((i % 2) ? -1.0 : 1.0); };
  for (int i = 0; i <= N; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      D(i, j) = c(i) / c(j) / (xfull_[i] - xfull_[j]);
      rowsum += D(i, j);
    }
    D(i, i) = -rowsum;
  }
  const Eigen::MatrixXd D2 = D * D;

  const int half = nodes / 2;
  r_ = xfull_.head(half);
  d1e_.resize(half, half);
  d1o_.resize(half, half);
  d2e_.resize(half, half);
  d2o_.resize(half, half);
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) {
      d1e_(i, j) = D(i, j) + D(i, N - j);
      d1o_(i, j) = D(i, j) - D(i, N - j);
      d2e_(i, j) = D2(i, j) + D2(i, N - j);
      d2o_(i, j) = D2(i, j) - D2(i, N - j);
    }
}

double RadialGrid::interpolate(const Eigen::VectorXd& values, int parity, double x) const {
  const int N = total_ - 1;
  const int half = total_ / 2;
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= N; ++j) {
    const double u = j < half ? values[j] : parity * values[N - j];
    double w = (j % 2) ? -1.0 : 1.0;
    if (j == 0 || j == N) w *= 0.5;
    const double dx = x - xfull_[j];
    if (dx == 0.0) return u;
    num += w * u / dx;
    den += w / dx;
  }
  return num / den;
}

std::shared_ptr<const RadialGrid> radial_grid(int nodes) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const RadialGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[nodes];
  if (!slot) slot = std::make_shared<const RadialGrid>(nodes);
  return slot;
}

}  // namespace tidaleq
