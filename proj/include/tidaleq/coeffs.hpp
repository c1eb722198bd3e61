#pragma once

#include <vector>

#include "tidaleq/potential.hpp"

namespace tidaleq {

struct CoefficientResult {
  double value = 0.0;
  double imag_residue = 0.0;
  double error_estimate = 0.0;
};

/// c_n by quadrature of the disk integral (both kernels), with a
/// coarse/fine comparison as error estimate.
CoefficientResult c_n_quadrature(const InteractionCase& c, int n);
/// Case B: closed form. Case A: quadrature; throws QuadratureError if the
/// error estimate or the imaginary residue exceeds 1e-9.
double c_n(const InteractionCase& c, int n);

/// c_0..c_N in one pass (moments of y^k accumulated on a single grid).
std::vector<double> c_table(const InteractionCase& c, int N);
std::vector<CoefficientResult> c_table_quadrature(const InteractionCase& c, int N);

struct Gamma0Result {
  double value = 0.0;
  double error_estimate = 0.0;
  std::vector<double> period_integrals;  // integral over [k pi, (k+1) pi]
  std::vector<double> partial_sums;
};

/// nu * int_0^inf int_0^inf e^-r zeta sin(zeta) (r^2 + zeta^2)^(-(2+nu)/2) dr dzeta
Gamma0Result gamma0_detail(double nu, int periods = 60);
double gamma0(double nu);

struct ModeTable {
  int N = 0;
  double a0_deriv = 0.0;          // A_0'(1)
  std::vector<double> a_deriv;    // A_n'(1), index n = 0..N (entry 0 repeats a0_deriv)
  std::vector<double> c;          // c_n, n = 0..N
  std::vector<double> omega;      // omega_n, n = 0..N
};

double omega_formula(double dphi1, double omega0, int n, double a_deriv, double c);
ModeTable build_mode_table(const BaseState& base, int N);

}  // namespace tidaleq
