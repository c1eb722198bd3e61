#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace tidaleq {

/// Chebyshev-Lobatto grid on [-1, 1] folded onto (0, 1] for polar problems.
/// A function with parity p (u(-r) = p u(r)) is represented by its values at
/// the positive nodes r_0 = 1 > r_1 > ... ; r = 0 is never a node because the
/// underlying grid has an even number of points.
class RadialGrid {
 public:
  /// `nodes` is the total number of Chebyshev points on [-1, 1]; must be even.
  explicit RadialGrid(int nodes = 128);

  int total() const { return total_; }
  int size() const { return static_cast<int>(r_.size()); }
  const Eigen::VectorXd& r() const { return r_; }

  /// Folded first and second derivative matrices for parity +1 / -1.
  const Eigen::MatrixXd& d1(int parity) const { return parity > 0 ? d1e_ : d1o_; }
  const Eigen::MatrixXd& d2(int parity) const { return parity > 0 ? d2e_ : d2o_; }

  /// Barycentric interpolation of folded samples (parity p) at x in [0, 1].
  double interpolate(const Eigen::VectorXd& values, int parity, double x) const;

 private:
  int total_;
  Eigen::VectorXd r_;
  Eigen::VectorXd xfull_;
  Eigen::MatrixXd d1e_, d2e_, d1o_, d2o_;
};

/// Shared, cached grid instance.
std::shared_ptr<const RadialGrid> radial_grid(int nodes);

}  // namespace tidaleq
