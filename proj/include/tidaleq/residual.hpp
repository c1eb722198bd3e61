#pragma once

#include <array>
#include <memory>
#include <vector>

#include "tidaleq/chebyshev.hpp"
#include "tidaleq/linop.hpp"

namespace tidaleq {

/// phi_h sampled on the polar grid (folded Chebyshev radii x uniform angles).
/// Row i is the radius grid->r()[i] (row 0 is r = 1).
struct DiskField {
  std::shared_ptr<const RadialGrid> grid;
  int angular = 0;
  Eigen::MatrixXd values;
  std::vector<double> normal_derivative;  // d phi / dr at r = 1, per angle
  double pde_residual = 0.0;
  int iterations = 0;

  std::vector<double> trace() const;
  /// sup over the boundary of |d phi / d theta| (vanishes with the Dirichlet condition)
  double tangential_sup() const;
};

struct PhiOptions {
  int radial_nodes = 128;
  int angular = 256;
  double picard_tol = 1e-13;
  double residual_tol = 1e-9;
  int max_iterations = 200;
};

/// Delta phi = |f_h'|^2 G(phi) in D, phi = 0 on the circle, by damped Picard
/// iteration with a spectral (Delta - Lambda) solve per angular mode.
DiskField solve_phi_h(const ShapeCoeffs& h, const VorticityProfile& G, const PhiOptions& opts = {},
                      const DiskField* initial = nullptr);

/// (U_h o f_h)(e^{i phi_j}), j = 0..M-1, via a boundary integral with
/// product quadrature for the kernel singularity.
std::vector<double> boundary_potential(const ShapeCoeffs& h, const InteractionCase& c, int M);

/// Gradient of U_h at (a, 0) by tensor quadrature on the disk.
std::array<double, 2> particle_force_vector(const ShapeCoeffs& h, const InteractionCase& c, double a,
                                            const DiskRule& rule);
/// d/dx1 U_h at (a, 0).
double particle_force(const ShapeCoeffs& h, const InteractionCase& c, double a,
                      const DiskRule& rule = make_disk_rule(64, 256));

struct ResidualOptions {
  PhiOptions phi;
  int disk_radial = 64;
  int disk_angular = 0;  // 0: use the operator's rule when called through the solver, else 256
};

struct ResidualValue {
  std::vector<double> f1;  // boundary samples of the first component
  BoundarySpectrum S;      // its spectrum (n <= M/2 - 1)
  double r2 = 0.0;
  double r3 = 0.0;
  std::shared_ptr<DiskField> field;
  double norm() const;     // max(|f1|_inf, |r2|, |r3|)
};

ResidualValue residual_F(const ShapeCoeffs& h, double a, double lambda, double m,
                         const BaseState& base, const ResidualOptions& opts = {},
                         const DiskField* warm = nullptr, const DiskRule* rule = nullptr);

struct Diagnostics {
  double area_error = 0.0;
  std::array<double, 2> center_of_mass{0.0, 0.0};
  double symmetry_defect = 0.0;
  double injectivity_margin = 0.0;
  double pressure_jump_sup = 0.0;
  double tangential_sup = 0.0;
};

struct IterateRecord {
  int iteration = 0;
  double residual_norm = 0.0;
  double f1_sup = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double step_norm = 0.0;
};

struct EquilibriumSolution {
  ShapeCoeffs h;
  double a = 0.0;
  double lambda = 0.0;
  double m = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  Diagnostics diagnostics;
  std::vector<IterateRecord> history;
  std::vector<double> boundary_f1;
};

struct SolveOptions {
  ResidualOptions residual;
  double tol = 1e-8;
  int max_iterations = 50;
  int divergence_window = 3;
  double m_cap = -1.0;  // negative: 1e-3 * min|omega_n| / max|S_n|
  bool warm_start = true;
};

/// Default cap on m for the frozen-derivative iteration.
double default_m_cap(const LinearizedOperator& op, int M);

/// Frozen-derivative quasi-Newton continuation from the base state.
EquilibriumSolution quasi_newton_solve(const LinearizedOperator& op, double m,
                                       const SolveOptions& opts = {});

Diagnostics compute_diagnostics(const ShapeCoeffs& h, double a, double lambda, double m,
                                const BaseState& base, const ResidualValue& res,
                                const DiskRule& rule);

}  // namespace tidaleq
