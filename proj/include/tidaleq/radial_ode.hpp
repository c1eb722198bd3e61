#pragma once

#include <memory>
#include <vector>

#include "tidaleq/chebyshev.hpp"
#include "tidaleq/kernel.hpp"

namespace tidaleq {

struct BaseState;

/// Samples of a radial function on the folded Chebyshev nodes, listed in
/// increasing r and ending at r = 1. Evaluation between nodes uses the
/// barycentric Chebyshev interpolant of the underlying grid.
struct RadialProfile {
  std::vector<double> nodes;
  std::vector<double> values;
  double deriv_at_1 = 0.0;
  int parity = 1;          // u(-r) = parity * u(r)
  double residual = 0.0;   // max collocation residual of the solve
  std::shared_ptr<const RadialGrid> grid;

  double operator()(double r) const;
  /// Values in folded order (r = 1 first), as used by the collocation code.
  Eigen::VectorXd folded() const;
};

struct Phi0Options {
  int radial_nodes = 128;
  double r_start = 1e-3;     // series start for the shooting integrator
  double ode_tol = 1e-12;
  double newton_tol = 1e-12;
};

/// phi0'' + phi0'/r = G(phi0), phi0(1) = 0, phi0'(0) = 0.
RadialProfile solve_phi0(const VorticityProfile& G, const Phi0Options& opts = {});

/// phi(1) as a function of the central value c (the shooting map).
double shoot_phi0(const VorticityProfile& G, double c, double r_start = 1e-3,
                  double tol = 1e-12);

enum class ModeForm { automatic, direct, substituted };

/// Mode n >= 0 of the linearized stream function:
///   A'' + A'/r - n^2 A / r^2 - G'(phi0) A = r^n G(phi0),  A(1) = 0.
/// The direct form is used for n < 8, the substitution A = r^n alpha above.
RadialProfile solve_An(int n, const BaseState& base, ModeForm form = ModeForm::automatic);

}  // namespace tidaleq
