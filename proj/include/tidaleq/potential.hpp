#pragma once

#include <string>

#include "tidaleq/kernel.hpp"
#include "tidaleq/radial_ode.hpp"

namespace tidaleq {

/// Interaction kernel: Case A is -|x|^-nu with nu in (0, 1]; Case B is ln|x|.
struct InteractionCase {
  enum class Kind { power, log };
  Kind kind = Kind::log;
  double nu = 0.0;

  static InteractionCase power(double nu);
  static InteractionCase log() { return InteractionCase{}; }
  bool is_log() const { return kind == Kind::log; }
  std::string label() const;

  /// Potential of a unit point mass at distance d.
  double point_potential(double d) const;
};

/// U_0(r) for the unit disk. Case A goes through quadrature, Case B is closed form.
double u0(const InteractionCase& c, double r);
/// Graded tensor Gauss-Legendre evaluation of U_0 and its r-derivatives
/// (order 0, 1, 2). Works for both kernels; derivatives need r > 1.
double u0_quadrature(const InteractionCase& c, double r, int order = 0);
double u0_d1(const InteractionCase& c, double r);
double u0_d2(const InteractionCase& c, double r);

/// Multipole series for nu = 1 with a caller-supplied prefactor. The printed
/// constant is -4/pi^2; the calibrated one is returned by calibrate_series_prefactor.
inline constexpr double kPrintedSeriesPrefactor = -0.40528473456935108578;  // -4/pi^2
double u0_series_nu1(double r, double prefactor);
double calibrate_series_prefactor(double r_ref = 2.0);

double omega_from_a0(const InteractionCase& c, double a0);
double a0_from_omega(const InteractionCase& c, double omega0, double a_min = 2.0);

struct BaseState {
  InteractionCase icase;
  double omega0 = 0.0;
  double a0 = 0.0;
  double lambda0 = 0.0;
  RadialProfile phi0;
  double dphi0_at_1 = 0.0;
  double g_at_boundary = 0.0;
  VorticityProfile G = constant_profile(0.0);
  double u0_at_1 = 0.0;
  double u0_d2_at_a0 = 0.0;
};

struct BaseOptions {
  int radial_nodes = 128;
  double a_min = 2.0;  // admissible particle distances a0 >= a_min
};

BaseState make_base_state(const InteractionCase& c, double a0, const VorticityProfile& G,
                          const BaseOptions& opts = {});

}  // namespace tidaleq
