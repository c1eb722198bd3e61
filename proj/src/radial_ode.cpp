#include "tidaleq/radial_ode.hpp"

#include <Eigen/LU>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "tidaleq/errors.hpp"
#include "tidaleq/potential.hpp"

namespace tidaleq {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

double RadialProfile::operator()(double r) const {
  if (!grid) throw DomainError("RadialProfile: no grid attached");
  return grid->interpolate(folded(), parity, r);
}

Eigen::VectorXd RadialProfile::folded() const {
  const int n = static_cast<int>(values.size());
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = values[n - 1 - i];
  return v;
}

namespace {

RadialProfile make_profile(const std::shared_ptr<const RadialGrid>& grid,
                           const Eigen::VectorXd& folded, int parity) {
  RadialProfile p;
  p.grid = grid;
  p.parity = parity;
  const int n = grid->size();
  p.nodes.resize(n);
  p.values.resize(n);
  for (int i = 0; i < n; ++i) {
    p.nodes[i] = grid->r()[n - 1 - i];
    p.values[i] = folded[n - 1 - i];
  }
  p.nodes.back() = 1.0;
  return p;
}

// Integrate from the series start to each radius in `radii` (ascending).
// Returns false when the trajectory blows up.
bool integrate_shot(const VorticityProfile& G, double c, double r0, double tol,
                    const std::vector<double>& radii, std::vector<State>* out) {
  const double g = G.eval(c), gp = G.d1(c);
  State y{c + g * r0 * r0 / 4.0 + gp * g * std::pow(r0, 4) / 64.0,
          g * r0 / 2.0 + gp * g * std::pow(r0, 3) / 16.0};
  auto rhs = [&G](const State& s, State& ds, double r) {
    ds[0] = s[1];
    ds[1] = G.eval(s[0]) - s[1] / r;
  };
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
  double r = r0;
  for (double target : radii) {
    if (target > r) {
      try {
        odeint::integrate_adaptive(stepper, rhs, y, r, target, 1e-3 * (target - r));
      } catch (const std::exception&) {
        return false;
      }
      r = target;
    }
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) return false;
    if (out) out->push_back(y);
  }
  return true;
}

}  // namespace

double shoot_phi0(const VorticityProfile& G, double c, double r_start, double tol) {
  std::vector<State> ys;
  if (!integrate_shot(G, c, r_start, tol, {1.0}, &ys))
    return c > 0 ? HUGE_VAL : -HUGE_VAL;  // monotone in c, so the sign is known
  return ys.back()[0];
}

RadialProfile solve_phi0(const VorticityProfile& G, const Phi0Options& opts) {
  auto grid = radial_grid(opts.radial_nodes);
  const int n = grid->size();

  // scale for the bracket: sup |G| over a moderate window
  double gmax = 0.0;
  for (int i = 0; i <= 200; ++i) gmax = std::max(gmax, std::abs(G.eval(-10.0 + 0.1 * i)));
  double lo = -10.0 * (1.0 + gmax), hi = -lo;
  double flo = shoot_phi0(G, lo, opts.r_start, opts.ode_tol);
  double fhi = shoot_phi0(G, hi, opts.r_start, opts.ode_tol);
  for (int k = 0; k < 8 && flo * fhi > 0.0; ++k) {
    lo *= 4.0;
    hi *= 4.0;
    flo = shoot_phi0(G, lo, opts.r_start, opts.ode_tol);
    fhi = shoot_phi0(G, hi, opts.r_start, opts.ode_tol);
  }
  if (flo * fhi > 0.0) {
    std::ostringstream os;
    os << "solve_phi0: no sign change of the shooting map on [" << lo << ", " << hi << "]";
    throw SolverError(os.str());
  }
  if (flo > fhi) throw DomainError("solve_phi0: shooting map is decreasing; G is not non-decreasing");
  double c = 0.0;
  if (flo == 0.0) c = lo;
  else if (fhi == 0.0) c = hi;
  else {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = shoot_phi0(G, mid, opts.r_start, opts.ode_tol);
      if (fm == 0.0) { lo = hi = mid; break; }
      if (fm < 0.0) lo = mid; else hi = mid;
    }
    c = 0.5 * (lo + hi);
  }

  // shooting solution at the nodes, then Newton polish on the collocation system
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) radii[i] = grid->r()[n - 1 - i];
  std::vector<State> ys;
  if (!integrate_shot(G, c, opts.r_start, opts.ode_tol, radii, &ys))
    throw SolverError("solve_phi0: shooting trajectory blew up at the bracketed root");
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[n - 1 - i] = ys[i][0];
  u[0] = 0.0;

  const Eigen::VectorXd& r = grid->r();
  const Eigen::MatrixXd L = grid->d2(1) + r.cwiseInverse().asDiagonal() * grid->d1(1);
  const Eigen::MatrixXd Li = L.bottomRightCorner(n - 1, n - 1);
  auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd res = (L * v).tail(n - 1);
    for (int i = 1; i < n; ++i) res[i - 1] -= G.eval(v[i]);
    return res;
  };
  Eigen::VectorXd res = residual(u);
  for (int it = 0; it < 30 && res.lpNorm<Eigen::Infinity>() > opts.newton_tol; ++it) {
    Eigen::MatrixXd J = Li;
    for (int i = 1; i < n; ++i) J(i - 1, i - 1) -= G.d1(u[i]);
    u.tail(n - 1) -= J.partialPivLu().solve(res);
    res = residual(u);
  }
  RadialProfile p = make_profile(grid, u, 1);
  p.deriv_at_1 = (grid->d1(1) * u)[0];
  p.residual = res.lpNorm<Eigen::Infinity>();
  if (!(p.residual < 1e-9))
    throw SolverError("solve_phi0: collocation residual " + std::to_string(p.residual));
  return p;
}

RadialProfile solve_An(int n, const BaseState& base, ModeForm form) {
  if (n < 0) throw DomainError("solve_An: n must be non-negative");
  auto grid = base.phi0.grid;
  const int m = grid->size();
  const Eigen::VectorXd& r = grid->r();
  const Eigen::VectorXd phi = base.phi0.folded();
  Eigen::VectorXd g0(m), g1(m);
  for (int i = 0; i < m; ++i) {
    g0[i] = base.G.eval(phi[i]);
    g1[i] = base.G.d1(phi[i]);
  }
  if (form == ModeForm::automatic) form = n < 8 ? ModeForm::direct : ModeForm::substituted;

  Eigen::MatrixXd L;
  Eigen::VectorXd rhs(m);
  int parity = 1;
  if (form == ModeForm::direct) {
    parity = (n % 2 == 0) ? 1 : -1;
    L = grid->d2(parity) + r.cwiseInverse().asDiagonal() * grid->d1(parity);
    for (int i = 0; i < m; ++i) {
      L(i, i) -= double(n) * n / (r[i] * r[i]) + g1[i];
      rhs[i] = std::pow(r[i], n) * g0[i];
    }
  } else {
    L = grid->d2(1) + ((2.0 * n + 1.0) * r.cwiseInverse()).asDiagonal() * grid->d1(1);
    for (int i = 0; i < m; ++i) L(i, i) -= g1[i];
    rhs = g0;
  }
  Eigen::VectorXd sol = Eigen::VectorXd::Zero(m);
  auto lu = L.bottomRightCorner(m - 1, m - 1).fullPivLu();
  if (!lu.isInvertible()) throw SolverError("solve_An: singular collocation matrix at n=" + std::to_string(n));
  sol.tail(m - 1) = lu.solve(rhs.tail(m - 1));
  const double resid = (L.bottomRightCorner(m - 1, m - 1) * sol.tail(m - 1) - rhs.tail(m - 1))
                           .lpNorm<Eigen::Infinity>();
  const double deriv = (grid->d1(parity) * sol)[0];

  Eigen::VectorXd values = sol;
  if (form == ModeForm::substituted) {
    parity = (n % 2 == 0) ? 1 : -1;
    for (int i = 0; i < m; ++i) values[i] = std::pow(r[i], n) * sol[i];
  }
  RadialProfile p = make_profile(grid, values, parity);
  p.deriv_at_1 = deriv;  // A'(1) = n alpha(1) + alpha'(1) = alpha'(1)
  p.residual = resid;
  return p;
}

}  // namespace tidaleq
