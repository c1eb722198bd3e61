#include "tidaleq/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tidaleq/errors.hpp"
#include "tidaleq/quadrature.hpp"

namespace tidaleq {

using std::numbers::pi;

InteractionCase InteractionCase::power(double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("Case A exponent nu must lie in (0, 1]");
  InteractionCase c;
  c.kind = Kind::power;
  c.nu = nu;
  return c;
}

std::string InteractionCase::label() const {
  if (is_log()) return "B";
  std::ostringstream os;
  os << "A:" << nu;
  return os.str();
}

double InteractionCase::point_potential(double d) const {
  return is_log() ? std::log(d) : -std::pow(d, -nu);
}

namespace {

// s * k(r, s, phi) and its r-derivatives, with d^2 = r^2 + s^2 - 2 r s cos(phi).
double disk_integrand(const InteractionCase& c, double r, double s, double phi, int order) {
  const double sh = std::sin(0.5 * phi);
  const double d2 = (r - s) * (r - s) + 4.0 * r * s * sh * sh;
  const double q = r - s * std::cos(phi);
  if (c.is_log()) {
    switch (order) {
      case 0: return 0.5 * s * std::log(d2);
      case 1: return s * q / d2;
      default: return s * (1.0 / d2 - 2.0 * q * q / (d2 * d2));
    }
  }
  const double nu = c.nu;
  switch (order) {
    case 0: return -s * std::pow(d2, -0.5 * nu);
    case 1: return nu * s * q * std::pow(d2, -0.5 * nu - 1.0);
    default: {
      const double p = std::pow(d2, -0.5 * nu - 1.0);
      return nu * s * (p - (nu + 2.0) * q * q * p / d2);
    }
  }
}

double tensor_integral(const InteractionCase& c, double r, int order, int pts) {
  constexpr int kLevels = 48;
  std::vector<double> sb, pb;
  if (r == 0.0) {
    sb = graded_breaks(0.0, 1.0, 4, kLevels, 0);
    pb = graded_breaks(0.0, pi, 4, 0, 0);
  } else if (r < 1.0) {
    sb = join_breaks(graded_breaks(0.0, r, 2, 0, kLevels), graded_breaks(r, 1.0, 2, kLevels, 0));
    pb = graded_breaks(0.0, pi, 4, kLevels, 0);
  } else {
    const double gap = r - 1.0;
    int lv = 0;
    if (gap == 0.0)
      lv = kLevels;
    else if (gap < 0.5)
      lv = std::clamp(static_cast<int>(std::ceil(std::log2(0.5 / gap))) + 4, 0, kLevels);
    sb = graded_breaks(0.0, 1.0, 4, 0, lv);
    pb = graded_breaks(0.0, pi, 6, lv, 0);
  }
  const Rule1D rs = composite_rule(sb, pts);
  const Rule1D rp = composite_rule(pb, pts);
  double total = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < rp.size(); ++j)
      row += rp.w[j] * disk_integrand(c, r, rs.x[i], rp.x[j], order);
    total += rs.w[i] * row;
  }
  return 2.0 * total;
}

void require_exterior(double r, const char* who) {
  if (!(r > 1.0)) throw DomainError(std::string(who) + ": needs r > 1 (got " + std::to_string(r) + ")");
}

}  // namespace

double u0_quadrature(const InteractionCase& c, double r, int order) {
  if (!(r >= 0.0)) throw DomainError("u0: r must be non-negative");
  if (order > 0) require_exterior(r, "u0 derivative");
  const double coarse = tensor_integral(c, r, order, 12);
  const double fine = tensor_integral(c, r, order, 20);
  const double err = std::abs(fine - coarse);
  if (err > 1e-9 * std::max(1.0, std::abs(fine)))
    throw QuadratureError("U0 quadrature did not converge at r = " + std::to_string(r), err);
  return fine;
}

double u0(const InteractionCase& c, double r) {
  if (!(r >= 0.0)) throw DomainError("u0: r must be non-negative");
  if (c.is_log()) return r <= 1.0 ? -0.5 * pi * (1.0 - r * r) : pi * std::log(r);
  return u0_quadrature(c, r, 0);
}

double u0_d1(const InteractionCase& c, double r) {
  require_exterior(r, "u0_d1");
  if (c.is_log()) return pi / r;
  return u0_quadrature(c, r, 1);
}

double u0_d2(const InteractionCase& c, double r) {
  require_exterior(r, "u0_d2");
  if (c.is_log()) return -pi / (r * r);
  return u0_quadrature(c, r, 2);
}

double u0_series_nu1(double r, double prefactor) {
  if (!(r >= 0.0)) throw DomainError("u0_series_nu1: r must be non-negative");
  double w = pi / 2.0;  // W_0
  double sum = 0.0;
  constexpr int kMaxTerms = 4000000;
  for (int k = 0; k < kMaxTerms; ++k) {
    if (k > 0) w *= (2.0 * k - 1.0) / (2.0 * k);
    const double w2 = w * w;
    double term;
    if (r <= 1.0)
      term = w2 * (r / (2.0 * k + 2.0) + (r - std::pow(r, 2.0 * k)) / (2.0 * k - 1.0));
    else
      term = w2 / (2.0 * k + 2.0) * std::pow(r, -2.0 * k - 1.0);
    sum += term;
    if (k > 4 && std::abs(term) < 1e-18) break;
  }
  return prefactor * sum;
}

double calibrate_series_prefactor(double r_ref) {
  const InteractionCase c = InteractionCase::power(1.0);
  return kPrintedSeriesPrefactor * u0_quadrature(c, r_ref) /
         u0_series_nu1(r_ref, kPrintedSeriesPrefactor);
}

double omega_from_a0(const InteractionCase& c, double a0) {
  if (!(a0 >= 1.0)) throw DomainError("omega_from_a0: a0 must be >= 1");
  return std::sqrt(u0_d1(c, a0) / a0);
}

double a0_from_omega(const InteractionCase& c, double omega0, double a_min) {
  constexpr double kAmax = 1e6;
  const double w_hi = omega_from_a0(c, a_min);
  const double w_lo = omega_from_a0(c, kAmax);
  // values within rounding of the endpoint count as the endpoint
  if (omega0 > w_hi && omega0 <= w_hi * (1.0 + 1e-12)) return a_min;
  if (!(omega0 > w_lo && omega0 <= w_hi)) {
    std::ostringstream os;
    os << "omega0 = " << omega0 << " outside the admissible interval (" << w_lo << ", " << w_hi
       << "] for a0 in [" << a_min << ", " << kAmax << "]";
    throw DomainError(os.str());
  }
  // omega_from_a0 is strictly decreasing
  double lo = a_min, hi = kAmax;
  if (std::abs(w_hi - omega0) < 1e-12) return a_min;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double w = omega_from_a0(c, mid);
    if (std::abs(w - omega0) < 1e-13 && hi - lo < 1e-12 * mid) return mid;
    if (w > omega0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

BaseState make_base_state(const InteractionCase& c, double a0, const VorticityProfile& G,
                          const BaseOptions& opts) {
  if (!(a0 >= opts.a_min))
    throw DomainError("make_base_state: a0 = " + std::to_string(a0) + " below the minimum " +
                      std::to_string(opts.a_min));
  BaseState b;
  b.icase = c;
  b.a0 = a0;
  b.omega0 = omega_from_a0(c, a0);
  b.G = G;
  Phi0Options po;
  po.radial_nodes = opts.radial_nodes;
  b.phi0 = solve_phi0(G, po);
  b.dphi0_at_1 = b.phi0.deriv_at_1;
  if (std::abs(b.dphi0_at_1) < 1e-10)
    throw DegenerateBaseError("phi0'(1) vanishes; the base stream function has no boundary flux");
  b.g_at_boundary = G.eval(0.0);
  b.u0_at_1 = u0(c, 1.0);
  b.u0_d2_at_a0 = u0_d2(c, a0);
  b.lambda0 = 0.5 * b.dphi0_at_1 * b.dphi0_at_1 - 0.5 * b.omega0 * b.omega0 + b.u0_at_1;
  return b;
}

}  // namespace tidaleq
