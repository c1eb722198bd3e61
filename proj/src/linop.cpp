#include "tidaleq/linop.hpp"

#include <cmath>
#include <numbers>

#include "tidaleq/errors.hpp"
#include "tidaleq/quadrature.hpp"

namespace tidaleq {

using std::numbers::pi;

DiskRule make_disk_rule(int radial, int angular) {
  const Rule1D& gl = gauss_legendre(radial);
  DiskRule d;
  d.angular = angular;
  for (int i = 0; i < radial; ++i) {
    const double r = 0.5 * (1.0 + gl.x[i]);
    d.r.push_back(r);
    d.wr.push_back(0.5 * gl.w[i] * r);
  }
  return d;
}

double LinearizedOperator::W(const ShapeCoeffs& g) const {
  double s = g.g0() * w_re[0];
  for (int n = 1; n <= std::min(g.N(), N()); ++n) {
    const cplx c = g.coeff(n);
    s += c.real() * w_re[n] + c.imag() * w_im[n];
  }
  return s;
}

void w_coefficients(const InteractionCase& c, double a, int N, const DiskRule& rule,
                    std::vector<double>* re, std::vector<double>* im) {
  re->assign(N + 1, 0.0);
  im->assign(N + 1, 0.0);
  const int M = rule.angular;
  const double nu = c.is_log() ? 0.0 : c.nu;
  const double pre1 = c.is_log() ? 1.0 : nu;
  const double pre2 = c.is_log() ? 2.0 : nu * (nu + 2.0);
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const double r = rule.r[i];
    for (int j = 0; j < M; ++j) {
      const double w = rule.wr[i] * 2.0 * pi / M;
      const cplx y = std::polar(r, 2.0 * pi * j / M);
      const cplx d = cplx(a, 0.0) - y;
      const double q2 = std::norm(d);
      const double A1 = pre1 * std::pow(q2, -0.5 * nu - 1.0) * w;
      const double A2 = pre2 * std::pow(q2, -0.5 * nu - 2.0) * w;
      const double dr = d.real(), di = d.imag();
      // W[g] = A1 (-Re g + 2 Re g' Re d) + A2 Re(d conj g) Re d
      cplx yn = 1.0;  // y^n
      for (int n = 0; n <= N; ++n) {
        const cplx g = yn * y;              // y^{n+1}
        const cplx gp = double(n + 1) * yn;  // (n+1) y^n
        (*re)[n] += A1 * (-g.real() + 2.0 * gp.real() * dr) +
                    A2 * (dr * g.real() + di * g.imag()) * dr;
        // direction i z^{n+1}: Re(i g) = -Im g, Im(i g) = Re g
        (*im)[n] += A1 * (g.imag() - 2.0 * gp.imag() * dr) +
                    A2 * (-dr * g.imag() + di * g.real()) * dr;
        yn *= y;
      }
    }
  }
}

LinearizedOperator assemble_operator(const BaseState& base, const ModeTable& table,
                                     const LinopOptions& opts) {
  LinearizedOperator op;
  op.base = base;
  op.table = table;
  op.resonance_tol = opts.resonance_tol;
  op.particle_diag = base.omega0 * base.omega0 - base.u0_d2_at_a0;
  if (!(op.particle_diag > 0.0))
    throw DomainError("assemble_operator: particle diagonal is not positive");
  const int angular = opts.disk_angular > 0 ? opts.disk_angular : std::max(128, 2 * table.N + 34);
  op.disk = make_disk_rule(opts.disk_radial, angular);
  w_coefficients(base.icase, base.a0, table.N, op.disk, &op.w_re, &op.w_im);
  return op;
}

ScanReport nonresonance_scan(const BaseState& base, const ModeTable& table, double margin_factor,
                             double tol) {
  ScanReport rep;
  rep.margin_factor = margin_factor;
  rep.tol = tol;
  rep.min_abs_omega = HUGE_VAL;
  const double d = base.dphi0_at_1;
  for (int n = 1; n <= table.N; ++n) {
    const double w = std::abs(table.omega[n]);
    if (w < rep.min_abs_omega) {
      rep.min_abs_omega = w;
      rep.argmin_n = n;
    }
    if (w < tol) rep.resonances.push_back(n);
  }
  // tail certificate: leading term dominates every other term from n_T to N
  int last_fail = 0;
  for (int n = 1; n <= table.N; ++n) {
    const double lead = 0.5 * d * d * (n + 1.0);
    const double rest = 0.5 * base.omega0 * base.omega0 +
                        std::abs(d * table.a_deriv[n]) * (n + 1.0) + std::abs(table.c[n]);
    if (!(lead > margin_factor * rest)) last_fail = n;
  }
  rep.tail_certified_from = last_fail < table.N ? last_fail + 1 : -1;
  return rep;
}

ScanReport nonresonance_scan(const LinearizedOperator& op, double margin_factor) {
  return nonresonance_scan(op.base, op.table, margin_factor, op.resonance_tol);
}

LinearSolution solve_linearized(const LinearizedOperator& op, const BoundarySpectrum& S, double Z,
                                double M) {
  const int N = std::min(S.N(), op.N());
  LinearSolution x;
  x.g = ShapeCoeffs(N);
  const double g0 = M / (2.0 * pi);
  x.g.set_g0(g0);
  x.mu = 2.0 * op.table.omega[0] * g0 - S.s[0].real();
  for (int n = 1; n <= N; ++n) {
    const double w = op.table.omega[n];
    if (std::abs(w) < op.resonance_tol) throw ResonanceError(n, w);
    x.g.set(n, S.s[n] / w);
  }
  x.b = (Z + op.W(x.g)) / op.particle_diag;
  return x;
}

OperatorImage apply_operator(const LinearizedOperator& op, const ShapeCoeffs& g, double b,
                             double mu) {
  const int N = std::min(g.N(), op.N());
  OperatorImage out;
  out.S = BoundarySpectrum(N);
  out.S.s[0] = 2.0 * op.table.omega[0] * g.g0() - mu;
  for (int n = 1; n <= N; ++n) out.S.s[n] = op.table.omega[n] * g.coeff(n);
  out.Z = op.particle_diag * b - op.W(g);
  out.M = 2.0 * pi * g.g0();
  return out;
}

BoundarySpectrum particle_spectrum(const InteractionCase& c, double a, int N, int M) {
  std::vector<double> samples(M);
  for (int j = 0; j < M; ++j) {
    const cplx z = std::polar(1.0, 2.0 * pi * j / M);
    samples[j] = c.point_potential(std::abs(z - a));
  }
  return analyze(samples, N);
}

FirstOrder first_order_response(const LinearizedOperator& op, double m, int M) {
  if (M <= 0) M = 2 * op.N() + 2;
  const BoundarySpectrum Sm = particle_spectrum(op.base.icase, op.base.a0, std::min(op.N(), M / 2 - 1), M);
  LinearSolution x = solve_linearized(op, Sm, 0.0, 0.0);
  FirstOrder r;
  r.h1 = (-m) * x.g;
  r.a1 = -m * x.b;
  r.lambda1 = -m * x.mu;
  return r;
}

}  // namespace tidaleq
