#pragma once

#include <vector>

#include "tidaleq/coeffs.hpp"
#include "tidaleq/potential.hpp"
#include "tidaleq/spectral.hpp"

namespace tidaleq {

/// Tensor rule on the unit disk: Gauss-Legendre in r (weight r dr folded in)
/// times the trapezoid rule in theta.
struct DiskRule {
  std::vector<double> r;
  std::vector<double> wr;  // includes the Jacobian r
  int angular = 0;
};
DiskRule make_disk_rule(int radial, int angular);

struct LinopOptions {
  int disk_radial = 64;
  int disk_angular = 0;       // 0: max(128, 2N + 34)
  double resonance_tol = 1e-9;
};

/// Linearization of the reduced system at (h, a, lambda, m) = (0, a0, lambda0, 0).
struct LinearizedOperator {
  BaseState base;
  ModeTable table;
  double particle_diag = 0.0;    // Omega0^2 - U0''(a0)
  std::vector<double> w_re;      // W[z^{n+1}], n = 0..N
  std::vector<double> w_im;      // W[i z^{n+1}]
  DiskRule disk;
  double resonance_tol = 1e-9;

  int N() const { return table.N; }
  /// Directional derivative of d/dx1 U_h(X0) at h = 0 along g.
  double W(const ShapeCoeffs& g) const;
};

LinearizedOperator assemble_operator(const BaseState& base, const ModeTable& table,
                                     const LinopOptions& opts = {});

/// W_{0,a}[z^{n+1}] and W_{0,a}[i z^{n+1}] for n = 0..N by direct quadrature.
void w_coefficients(const InteractionCase& c, double a, int N, const DiskRule& rule,
                    std::vector<double>* re, std::vector<double>* im);

struct ScanReport {
  double min_abs_omega = 0.0;
  int argmin_n = -1;
  int tail_certified_from = -1;  // -1: no certificate within N
  std::vector<int> resonances;
  double margin_factor = 0.0;
  double tol = 0.0;
};

ScanReport nonresonance_scan(const BaseState& base, const ModeTable& table,
                             double margin_factor = 2.0, double tol = 1e-9);
ScanReport nonresonance_scan(const LinearizedOperator& op, double margin_factor = 2.0);

struct LinearSolution {
  ShapeCoeffs g;
  double b = 0.0;
  double mu = 0.0;
};

struct OperatorImage {
  BoundarySpectrum S;
  double Z = 0.0;
  double M = 0.0;
};

/// Solves D F (g, b, mu) = (S, Z, M). Throws ResonanceError on |omega_n| < tol.
LinearSolution solve_linearized(const LinearizedOperator& op, const BoundarySpectrum& S, double Z,
                                double M);
/// Forward action: S_0 = 2 omega_0 g0 - mu, S_n = omega_n g_n, Z = d b - W[g], M = 2 pi g0.
OperatorImage apply_operator(const LinearizedOperator& op, const ShapeCoeffs& g, double b,
                             double mu);

/// Spectrum of U_X(e^{i phi}) with X = (a, 0).
BoundarySpectrum particle_spectrum(const InteractionCase& c, double a, int N, int M);

struct FirstOrder {
  ShapeCoeffs h1;
  double a1 = 0.0;
  double lambda1 = 0.0;
};

/// (h1, a1, lambda1) = -m D F^{-1} (S_m, 0, 0); a1 and lambda1 are increments.
FirstOrder first_order_response(const LinearizedOperator& op, double m, int M = 0);

}  // namespace tidaleq
