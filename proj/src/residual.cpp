#include "tidaleq/residual.hpp"

#include <Eigen/LU>
#include <cmath>
#include <mutex>
#include <numbers>

#include "tidaleq/errors.hpp"
#include "tidaleq/fft.hpp"
#include "tidaleq/quadrature.hpp"

namespace tidaleq {

using std::numbers::pi;

namespace {

// Row-wise real <-> half-spectrum transforms over the angular index.
Eigen::MatrixXcd rows_forward(const Eigen::MatrixXd& u) {
  const int n = u.rows(), M = u.cols();
  Eigen::MatrixXcd out(n, M / 2 + 1);
  std::vector<cplx> row(M);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < M; ++j) row[j] = u(i, j);
    const auto f = dft_forward(row);
    for (int k = 0; k <= M / 2; ++k) out(i, k) = f[k] / double(M);
  }
  return out;
}

std::vector<double> half_backward(const std::vector<cplx>& c, int M) {
  std::vector<cplx> full(M, 0.0);
  full[0] = c[0].real();
  for (int k = 1; k < M / 2; ++k) {
    full[k] = c[k];
    full[M - k] = std::conj(c[k]);
  }
  full[M / 2] = c[M / 2].real();
  const auto b = dft_backward(full);
  std::vector<double> out(M);
  for (int j = 0; j < M; ++j) out[j] = b[j].real();
  return out;
}

Eigen::MatrixXd rows_backward(const Eigen::MatrixXcd& c, int M) {
  const int n = c.rows();
  Eigen::MatrixXd out(n, M);
  std::vector<cplx> row(M / 2 + 1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= M / 2; ++k) row[k] = c(i, k);
    const auto v = half_backward(row, M);
    for (int j = 0; j < M; ++j) out(i, j) = v[j];
  }
  return out;
}

// Mode operators u'' + u'/r - k^2 u / r^2 (folded, parity (-1)^k) and the
// interior factorizations of (operator - Lambda).
struct ModeSolvers {
  int nodes = 0, M = 0;
  double lambda = 0.0;
  std::vector<Eigen::MatrixXd> lap;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
};

std::shared_ptr<const ModeSolvers> mode_solvers(const RadialGrid& grid, int M, double lambda) {
  static std::mutex mu;
  static std::vector<std::shared_ptr<const ModeSolvers>> cache;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& s : cache)
    if (s->nodes == grid.total() && s->M == M && s->lambda == lambda) return s;
  auto s = std::make_shared<ModeSolvers>();
  s->nodes = grid.total();
  s->M = M;
  s->lambda = lambda;
  const int n = grid.size();
  const Eigen::VectorXd& r = grid.r();
  for (int k = 0; k <= M / 2; ++k) {
    const int p = (k % 2 == 0) ? 1 : -1;
    Eigen::MatrixXd L = grid.d2(p) + r.cwiseInverse().asDiagonal() * grid.d1(p);
    for (int i = 0; i < n; ++i) L(i, i) -= double(k) * k / (r[i] * r[i]);
    Eigen::MatrixXd Li = L.bottomRightCorner(n - 1, n - 1);
    Li.diagonal().array() -= lambda;
    s->lu.emplace_back(Li);
    s->lap.push_back(std::move(L));
  }
  if (cache.size() > 8) cache.erase(cache.begin());
  cache.push_back(s);
  return s;
}

// round up to two significant digits so nearby shapes share factorizations
double round_up(double x) {
  if (x <= 0.0) return 0.0;
  const double e = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
  return std::ceil(x / e) * e;
}

}  // namespace

std::vector<double> DiskField::trace() const {
  std::vector<double> t(angular);
  for (int j = 0; j < angular; ++j) t[j] = values(0, j);
  return t;
}

double DiskField::tangential_sup() const {
  const auto t = trace();
  Eigen::MatrixXd row(1, angular);
  for (int j = 0; j < angular; ++j) row(0, j) = t[j];
  Eigen::MatrixXcd c = rows_forward(row);
  for (int k = 0; k <= angular / 2; ++k) c(0, k) *= cplx(0.0, k);
  c(0, angular / 2) = 0.0;
  const auto d = rows_backward(c, angular);
  return d.cwiseAbs().maxCoeff();
}

DiskField solve_phi_h(const ShapeCoeffs& h, const VorticityProfile& G, const PhiOptions& opts,
                      const DiskField* initial) {
  if (injectivity_margin(h) <= 0.0)
    throw DomainError("solve_phi_h: shape is not certified injective");
  auto grid = radial_grid(opts.radial_nodes);
  const int n = grid->size(), M = opts.angular;
  if (M % 2 != 0 || h.N() + 2 > M) throw DomainError("solve_phi_h: bad angular grid size");

  Eigen::MatrixXd J(n, M);
  for (int i = 0; i < n; ++i) {
    const CircleValues cv = eval_circle(h, M, grid->r()[i]);
    for (int j = 0; j < M; ++j) J(i, j) = std::norm(cv.fp[j]);
  }

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, M);
  if (initial && initial->values.rows() == n && initial->values.cols() == M) u = initial->values;

  DiskField field;
  field.grid = grid;
  field.angular = M;
  std::shared_ptr<const ModeSolvers> ms;
  Eigen::MatrixXcd uhat;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    double lam = 0.0;
    if (!G.is_constant()) {
      double sup = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < M; ++j) sup = std::max(sup, J(i, j) * G.d1(u(i, j)));
      lam = round_up(1.05 * sup);
    }
    if (!ms || ms->lambda < lam || ms->lambda > 1.5 * lam + 1e-12) ms = mode_solvers(*grid, M, lam);
    lam = ms->lambda;

    Eigen::MatrixXd rhs(n, M);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < M; ++j) rhs(i, j) = J(i, j) * G.eval(u(i, j)) - lam * u(i, j);
    const Eigen::MatrixXcd rh = rows_forward(rhs);
    uhat = Eigen::MatrixXcd::Zero(n, M / 2 + 1);
    for (int k = 0; k <= M / 2; ++k) {
      const Eigen::VectorXd re = rh.col(k).tail(n - 1).real();
      const Eigen::VectorXd im = rh.col(k).tail(n - 1).imag();
      const Eigen::VectorXd xr = ms->lu[k].solve(re);
      const Eigen::VectorXd xi = ms->lu[k].solve(im);
      for (int i = 1; i < n; ++i) uhat(i, k) = cplx(xr[i - 1], xi[i - 1]);
    }
    const Eigen::MatrixXd next = rows_backward(uhat, M);
    const double diff = (next - u).cwiseAbs().maxCoeff();
    u = next;
    if (diff <= opts.picard_tol * std::max(1.0, u.cwiseAbs().maxCoeff())) {
      ++it;
      break;
    }
  }
  field.iterations = it;
  field.values = u;

  // PDE residual and the boundary normal derivative from the final iterate
  const auto& lapms = mode_solvers(*grid, M, 0.0);
  Eigen::MatrixXcd lap(n, M / 2 + 1);
  std::vector<cplx> dn(M / 2 + 1);
  for (int k = 0; k <= M / 2; ++k) {
    const int p = (k % 2 == 0) ? 1 : -1;
    lap.col(k) = lapms->lap[k].cast<cplx>() * uhat.col(k);
    dn[k] = (grid->d1(p).row(0).cast<cplx>() * uhat.col(k))(0);
  }
  const Eigen::MatrixXd lapu = rows_backward(lap, M);
  double res = 0.0;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < M; ++j) res = std::max(res, std::abs(lapu(i, j) - J(i, j) * G.eval(u(i, j))));
  field.pde_residual = res;
  field.normal_derivative = half_backward(dn, M);
  if (!(res < opts.residual_tol))
    throw SolverError("solve_phi_h: Picard iteration stalled (residual " + std::to_string(res) +
                      " after " + std::to_string(it) + " iterations)");
  return field;
}

namespace {

// R_d = (2 pi / M) sum_k w_k e^{2 pi i k d / M} for an even weight with
// Fourier coefficients w_k.
std::vector<double> product_weights(int M, const std::vector<double>& wk) {
  std::vector<cplx> a(M, 0.0);
  for (int k = 0; k <= M / 2; ++k) {
    a[k] = wk[k];
    if (k > 0 && k < M / 2) a[M - k] = wk[k];
  }
  const auto b = dft_backward(a);
  std::vector<double> R(M);
  for (int d = 0; d < M; ++d) R[d] = 2.0 * pi / M * b[d].real();
  return R;
}

// Fourier coefficients of |2 sin(s/2)|^beta
std::vector<double> power_weight_coeffs(int M, double beta) {
  std::vector<double> w(M / 2 + 1);
  w[0] = std::tgamma(beta + 1.0) / std::pow(std::tgamma(0.5 * beta + 1.0), 2);
  for (int k = 0; k < M / 2; ++k) w[k + 1] = -w[k] * (0.5 * beta - k) / (0.5 * beta + k + 1.0);
  return w;
}

// Fourier coefficients of ln|2 sin(s/2)|
std::vector<double> log_weight_coeffs(int M) {
  std::vector<double> w(M / 2 + 1, 0.0);
  for (int k = 1; k <= M / 2; ++k) w[k] = -0.5 / k;
  return w;
}

}  // namespace

std::vector<double> boundary_potential(const ShapeCoeffs& h, const InteractionCase& c, int M) {
  if (injectivity_margin(h) <= 0.0)
    throw DomainError("boundary_potential: shape is not certified injective");
  const CircleValues v = eval_circle(h, M, 1.0);
  std::vector<cplx> zp(M), zpp(M), nrm(M);
  for (int j = 0; j < M; ++j) {
    const cplx z = std::polar(1.0, 2.0 * pi * j / M);
    zp[j] = cplx(0.0, 1.0) * z * v.fp[j];
    zpp[j] = -z * v.fp[j] - z * z * v.fpp[j];
    nrm[j] = z * v.fp[j];  // outward normal times arclength per unit angle
  }
  std::vector<double> sin2(M);  // |2 sin(s/2)|
  for (int d = 0; d < M; ++d) sin2[d] = std::abs(2.0 * std::sin(pi * d / M));

  const bool log = c.is_log();
  const double beta = 2.0 - c.nu;
  const std::vector<double> R =
      product_weights(M, log ? log_weight_coeffs(M) : power_weight_coeffs(M, beta));
  const double h0 = 2.0 * pi / M;

  std::vector<double> out(M);
  for (int l = 0; l < M; ++l) {
    double acc = 0.0;
    for (int j = 0; j < M; ++j) {
      const int d = (j - l + M) % M;
      double q, P, num;
      if (d == 0) {
        q = std::abs(zp[l]);
        P = 0.5 * std::imag(std::conj(zp[l]) * zpp[l]);
        num = 0.0;
      } else {
        const cplx diff = v.f[j] - v.f[l];
        num = std::real(diff * std::conj(nrm[j]));
        q = std::abs(diff) / sin2[d];
        P = num / (sin2[d] * sin2[d]);
      }
      if (log) {
        // (2 ln rho - 1)/4 * num, split into ln|2 sin| * num/2 + (2 ln q - 1) num / 4
        acc += R[d] * 0.5 * num + h0 * 0.25 * (2.0 * std::log(q) - 1.0) * num;
      } else {
        acc += R[d] * (-std::pow(q, -c.nu) * P / beta);
      }
    }
    out[l] = acc;
  }
  return out;
}

std::array<double, 2> particle_force_vector(const ShapeCoeffs& h, const InteractionCase& c, double a,
                                            const DiskRule& rule) {
  if (!(a >= 1.5)) throw DomainError("particle_force: a must be >= 1.5");
  const int M = rule.angular;
  const cplx X(a, 0.0);
  const CircleValues edge = eval_circle(h, M, 1.0);
  double dmin = HUGE_VAL;
  for (int j = 0; j < M; ++j) dmin = std::min(dmin, std::abs(X - edge.f[j]));
  if (!(dmin > 0.1))
    throw DomainError("particle_force: particle too close to the body (distance " +
                      std::to_string(dmin) + ")");
  double fx = 0.0, fy = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const CircleValues cv = eval_circle(h, M, rule.r[i]);
    const double w = rule.wr[i] * 2.0 * pi / M;
    for (int j = 0; j < M; ++j) {
      const cplx d = X - cv.f[j];
      const double q2 = std::norm(d);
      const double k = c.is_log() ? 1.0 / q2 : c.nu * std::pow(q2, -0.5 * c.nu - 1.0);
      const double J = std::norm(cv.fp[j]);
      fx += w * k * d.real() * J;
      fy += w * k * d.imag() * J;
    }
  }
  return {fx, fy};
}

double particle_force(const ShapeCoeffs& h, const InteractionCase& c, double a, const DiskRule& rule) {
  return particle_force_vector(h, c, a, rule)[0];
}

double ResidualValue::norm() const {
  double s = std::max(std::abs(r2), std::abs(r3));
  for (double v : f1) s = std::max(s, std::abs(v));
  return s;
}

ResidualValue residual_F(const ShapeCoeffs& h, double a, double lambda, double m,
                         const BaseState& base, const ResidualOptions& opts, const DiskField* warm,
                         const DiskRule* rule) {
  const int M = opts.phi.angular;
  ResidualValue out;
  out.field = std::make_shared<DiskField>(solve_phi_h(h, base.G, opts.phi, warm));
  const CircleValues bv = eval_circle(h, M, 1.0);
  const std::vector<double> B = boundary_potential(h, base.icase, M);
  const double w2 = base.omega0 * base.omega0;
  out.f1.resize(M);
  for (int j = 0; j < M; ++j) {
    const double dn = out.field->normal_derivative[j];
    out.f1[j] = 0.5 * dn * dn / std::norm(bv.fp[j]) - 0.5 * w2 * std::norm(bv.f[j]) + B[j] +
                m * base.icase.point_potential(std::abs(bv.f[j] - a)) - lambda;
  }
  out.S = analyze(out.f1);
  DiskRule local;
  if (!rule) {
    const int ang = opts.disk_angular > 0 ? opts.disk_angular : std::max(256, 2 * h.N() + 34);
    local = make_disk_rule(opts.disk_radial, ang);
    rule = &local;
  }
  out.r2 = w2 * a - particle_force(h, base.icase, a, *rule);
  out.r3 = area(h) - pi;
  return out;
}

Diagnostics compute_diagnostics(const ShapeCoeffs& h, double a, double lambda, double m,
                                const BaseState& base, const ResidualValue& res,
                                const DiskRule& rule) {
  (void)lambda;
  Diagnostics d;
  d.area_error = std::abs(area(h) - pi);
  d.symmetry_defect = h.max_abs_imag();
  d.injectivity_margin = injectivity_margin(h);
  // center of mass of fluid plus particle
  const int M = rule.angular;
  cplx mom = 0.0;
  for (std::size_t i = 0; i < rule.r.size(); ++i) {
    const CircleValues cv = eval_circle(h, M, rule.r[i]);
    const double w = rule.wr[i] * 2.0 * pi / M;
    for (int j = 0; j < M; ++j) mom += w * cv.f[j] * std::norm(cv.fp[j]);
  }
  mom += m * cplx(a, 0.0);
  mom /= (area(h) + m);
  d.center_of_mass = {mom.real(), mom.imag()};
  // pressure continuity: F(psi) - |grad psi|^2/2 + Omega0^2 |x|^2/2 + lambda = U_h + m U_X
  const auto trace = res.field->trace();
  const Rule1D& gl = gauss_legendre(16);
  double jump = 0.0;
  for (std::size_t j = 0; j < trace.size(); ++j) {
    const double u = trace[j];
    double F = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double s = 0.5 * u * (1.0 + gl.x[k]);
      F += 0.5 * u * gl.w[k] * (base.G.eval(s) + 2.0 * base.omega0);
    }
    jump = std::max(jump, std::abs(F - res.f1[j]));
  }
  d.pressure_jump_sup = jump;
  d.tangential_sup = res.field->tangential_sup();
  return d;
}

double default_m_cap(const LinearizedOperator& op, int M) {
  const int Ns = std::min(M / 2 - 1, op.N());
  double wmin = HUGE_VAL;
  for (int n = 1; n <= Ns; ++n) wmin = std::min(wmin, std::abs(op.table.omega[n]));
  const BoundarySpectrum S = particle_spectrum(op.base.icase, op.base.a0, Ns, M);
  double smax = 0.0;
  for (int n = 1; n <= Ns; ++n) smax = std::max(smax, std::abs(S.s[n]));
  return 1e-3 * wmin / smax;
}

EquilibriumSolution quasi_newton_solve(const LinearizedOperator& op, double m, const SolveOptions& opts) {
  const BaseState& base = op.base;
  const int M = opts.residual.phi.angular;
  const int Ns = std::min(M / 2 - 1, op.N());
  if (m < 0.0) throw DomainError("quasi_newton_solve: m must be non-negative");

  for (int n = 1; n <= Ns; ++n)
    if (std::abs(op.table.omega[n]) < op.resonance_tol) throw ResonanceError(n, op.table.omega[n]);
  const double cap = opts.m_cap >= 0.0 ? opts.m_cap : default_m_cap(op, M);
  if (m > cap)
    throw DomainError("quasi_newton_solve: m = " + std::to_string(m) + " exceeds the cap " +
                      std::to_string(cap));

  EquilibriumSolution sol;
  sol.m = m;
  ShapeCoeffs h(Ns);
  double a = base.a0, lambda = base.lambda0;
  if (opts.warm_start && m != 0.0) {
    const FirstOrder fo = first_order_response(op, m, M);
    for (int n = 0; n <= Ns; ++n) h.set(n, fo.h1.coeff(n));
    a += fo.a1;
    lambda += fo.lambda1;
  }

  std::shared_ptr<DiskField> warm;
  std::vector<double> norms;
  ResidualValue res;
  int rises = 0;
  double step = 0.0;
  for (int it = 0;; ++it) {
    res = residual_F(h, a, lambda, m, base, opts.residual, warm.get(), &op.disk);
    warm = res.field;
    const double nrm = res.norm();
    IterateRecord rec;
    rec.iteration = it;
    rec.residual_norm = nrm;
    rec.r2 = res.r2;
    rec.r3 = res.r3;
    rec.step_norm = step;
    for (double v : res.f1) rec.f1_sup = std::max(rec.f1_sup, std::abs(v));
    sol.history.push_back(rec);
    norms.push_back(nrm);
    sol.iterations = it;
    if (nrm < opts.tol) break;
    if (it > 0 && nrm > norms[it - 1]) {
      if (++rises >= opts.divergence_window)
        throw DivergenceError("quasi-Newton residual increased for " +
                                  std::to_string(opts.divergence_window) + " consecutive steps",
                              norms);
    } else {
      rises = 0;
    }
    if (it >= opts.max_iterations)
      throw DivergenceError("quasi-Newton did not converge in " +
                                std::to_string(opts.max_iterations) + " iterations",
                            norms);
    BoundarySpectrum S(Ns);
    for (int n = 0; n <= Ns; ++n) S.s[n] = res.S.s[n];
    const LinearSolution dx = solve_linearized(op, S, res.r2, res.r3);
    h -= dx.g;
    a -= dx.b;
    lambda -= dx.mu;
    step = std::max({dx.g.max_abs(), std::abs(dx.b), std::abs(dx.mu)});
    if (injectivity_margin(h) <= 0.0)
      throw DivergenceError("quasi-Newton iterate lost injectivity", norms);
  }
  sol.h = h;
  sol.a = a;
  sol.lambda = lambda;
  sol.residual_norm = norms.back();
  sol.boundary_f1 = res.f1;
  sol.diagnostics = compute_diagnostics(h, a, lambda, m, base, res, op.disk);
  return sol;
}

}  // namespace tidaleq
