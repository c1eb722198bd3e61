#pragma once

#include <utility>
#include <vector>

namespace tidaleq {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order.
const Rule1D& gauss_legendre(int n);

/// Gauss-Jacobi rule for the weight t^beta on [0, 1] (beta > -1), by Golub-Welsch.
Rule1D gauss_jacobi_unit(int n, double beta);

/// Composite rule on [a, b] with the given panel breakpoints (sorted).
Rule1D composite_rule(const std::vector<double>& breaks, int pts);

/// Breakpoints for [a, b] with `uniform` equal panels, dyadically refined
/// toward the left and/or right end by `levels_left` / `levels_right` halvings.
std::vector<double> graded_breaks(double a, double b, int uniform, int levels_left,
                                  int levels_right);

/// Concatenate breakpoint lists of adjacent intervals.
std::vector<double> join_breaks(const std::vector<double>& lhs, const std::vector<double>& rhs);

}  // namespace tidaleq
