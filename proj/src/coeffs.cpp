#include "tidaleq/coeffs.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "tidaleq/errors.hpp"
#include "tidaleq/quadrature.hpp"

namespace tidaleq {

using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

struct Moments {
  std::vector<cplx> kern;  // int_D y^k K(|1-y|) dy
  std::vector<cplx> flat;  // int_D y^k dy (log kernel only)
};

// Polar coordinates about y = 1: y = 1 - t (1 + e^{2 i theta}), theta in
// (-pi/2, pi/2), t in [0, 1]; dy = 4 t cos^2(theta) dt dtheta and
// |1 - y| = 2 t cos(theta). Along each chord y is linear in t, so the t-rule
// only has to integrate polynomials against t^(1-nu) (or t, t ln t).
Moments disk_moments(const InteractionCase& c, int K, double refine) {
  const int pts = refine > 1.0 ? 24 : 20;
  const int panels = static_cast<int>(std::ceil(refine * (K / 2.0 + 4.0)));
  const int levels = (c.is_log() || c.nu < 1.0) ? 24 : 0;
  const Rule1D rth = composite_rule(graded_breaks(-pi / 2, pi / 2, panels, levels, levels), pts);

  Rule1D rt, rtlog;
  const int nt = K / 2 + 3 + static_cast<int>(refine > 1.0 ? 2 : 0);
  if (c.is_log()) {
    rt = gauss_jacobi_unit(nt, 1.0);  // weight t
    const int tp = static_cast<int>(std::ceil(refine * (K / 8.0 + 2.0)));
    rtlog = composite_rule(graded_breaks(0.0, 1.0, tp, 40, 0), pts);
    for (std::size_t j = 0; j < rtlog.size(); ++j)
      rtlog.w[j] *= rtlog.x[j] * std::log(rtlog.x[j]);
  } else {
    rt = gauss_jacobi_unit(nt, 1.0 - c.nu);
  }

  // accumulate in split real arrays; std::complex products are slow here
  std::vector<double> kr(K + 1, 0.0), ki(K + 1, 0.0), fr, fi;
  if (c.is_log()) {
    fr.assign(K + 1, 0.0);
    fi.assign(K + 1, 0.0);
  }
  auto accumulate = [K](double yr, double yi, double w, double* ar, double* ai) {
    double pr = w, pim = 0.0;
    for (int k = 0; k <= K; ++k) {
      ar[k] += pr;
      ai[k] += pim;
      const double t = pr * yr - pim * yi;
      pim = pr * yi + pim * yr;
      pr = t;
    }
  };
  for (std::size_t i = 0; i < rth.size(); ++i) {
    const double th = rth.x[i];
    const double cs = std::cos(th);
    if (cs <= 0.0) continue;
    const double ur = 1.0 + std::cos(2.0 * th), ui = std::sin(2.0 * th);
    const double two_c = 2.0 * cs;
    if (!c.is_log()) {
      const double wth = rth.w[i] * std::pow(two_c, 2.0 - c.nu);
      for (std::size_t j = 0; j < rt.size(); ++j)
        accumulate(1.0 - rt.x[j] * ur, -rt.x[j] * ui, wth * rt.w[j], kr.data(), ki.data());
    } else {
      const double wth = rth.w[i] * two_c * two_c;
      const double lc = std::log(two_c);
      for (std::size_t j = 0; j < rt.size(); ++j) {
        const double yr = 1.0 - rt.x[j] * ur, yi = -rt.x[j] * ui;
        accumulate(yr, yi, wth * rt.w[j], fr.data(), fi.data());
        accumulate(yr, yi, wth * rt.w[j] * lc, kr.data(), ki.data());
      }
      for (std::size_t j = 0; j < rtlog.size(); ++j)
        accumulate(1.0 - rtlog.x[j] * ur, -rtlog.x[j] * ui, wth * rtlog.w[j], kr.data(), ki.data());
    }
  }
  Moments m;
  m.kern.resize(K + 1);
  for (int k = 0; k <= K; ++k) m.kern[k] = cplx(kr[k], ki[k]);
  if (c.is_log()) {
    m.flat.resize(K + 1);
    for (int k = 0; k <= K; ++k) m.flat[k] = cplx(fr[k], fi[k]);
  }
  return m;
}

// c_n = 1/2 int_D [ nu sum_{k<=n} y^k - 2(n+1) y^n ] |1-y|^-nu dy        (A)
// c_n = 1/2 int_D [ sum_{k<=n} y^k + 2(n+1) y^n ln|1-y| ] dy             (B)
std::vector<cplx> combine(const InteractionCase& c, const Moments& m, int N) {
  std::vector<cplx> out(N + 1);
  cplx run = 0.0;
  for (int n = 0; n <= N; ++n) {
    if (c.is_log()) {
      run += m.flat[n];
      out[n] = 0.5 * (run + 2.0 * (n + 1.0) * m.kern[n]);
    } else {
      run += m.kern[n];
      out[n] = 0.5 * (c.nu * run - 2.0 * (n + 1.0) * m.kern[n]);
    }
  }
  return out;
}

std::vector<CoefficientResult> quadrature_results(const InteractionCase& c, int N) {
  const auto coarse = combine(c, disk_moments(c, N, 1.0), N);
  const auto fine = combine(c, disk_moments(c, N, 1.25), N);
  std::vector<CoefficientResult> out(N + 1);
  for (int n = 0; n <= N; ++n) {
    out[n].value = fine[n].real();
    out[n].imag_residue = std::abs(fine[n].imag());
    out[n].error_estimate = std::abs(fine[n] - coarse[n]);
  }
  return out;
}

constexpr double kCoeffTol = 1e-9;

void check(const CoefficientResult& r, int n) {
  const double worst = std::max(r.error_estimate, r.imag_residue);
  if (worst > kCoeffTol * std::max(1.0, std::abs(r.value)))
    throw QuadratureError("c_n quadrature failed at n = " + std::to_string(n), worst);
}

double closed_form_log(int n) { return n == 0 ? pi / 2 : pi / 2 * (1.0 - 1.0 / n); }

}  // namespace

CoefficientResult c_n_quadrature(const InteractionCase& c, int n) {
  if (n < 0) throw DomainError("c_n: n must be non-negative");
  return quadrature_results(c, n)[n];
}

double c_n(const InteractionCase& c, int n) {
  if (n < 0) throw DomainError("c_n: n must be non-negative");
  if (c.is_log()) return closed_form_log(n);
  const auto r = c_n_quadrature(c, n);
  check(r, n);
  return r.value;
}

std::vector<CoefficientResult> c_table_quadrature(const InteractionCase& c, int N) {
  if (N < 0) throw DomainError("c_table: N must be non-negative");
  return quadrature_results(c, N);
}

std::vector<double> c_table(const InteractionCase& c, int N) {
  if (N < 0) throw DomainError("c_table: N must be non-negative");
  std::vector<double> out(N + 1);
  if (c.is_log()) {
    for (int n = 0; n <= N; ++n) out[n] = closed_form_log(n);
    return out;
  }
  const auto res = quadrature_results(c, N);
  for (int n = 0; n <= N; ++n) {
    check(res[n], n);
    out[n] = res[n].value;
  }
  return out;
}

namespace {

// int_0^inf e^-r (r^2 + z^2)^(-(2+nu)/2) dr, substituting r = z t
double inner_r_integral(double nu, double z) {
  const Rule1D& gl = gauss_legendre(16);
  const double e = -(2.0 + nu) / 2.0;
  auto f = [&](double t) { return std::exp(-z * t) * std::pow(t * t + 1.0, e); };
  double sum = 0.0;
  double a = 0.0, b = 0.25;
  for (int p = 0; p < 200; ++p) {
    double s = 0.0;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int k = 0; k < 16; ++k) s += gl.w[k] * f(c + h * gl.x[k]);
    s *= h;
    sum += s;
    if (a > 1.0 && std::abs(s) < 1e-17 * std::abs(sum)) break;
    a = b;
    b = a < 1.0 ? a + 0.25 : 2.0 * a;
  }
  return std::pow(z, -(1.0 + nu)) * sum;
}

double zeta_integrand(double nu, double z) {
  if (z == 0.0) return 0.0;
  return nu * z * std::sin(z) * inner_r_integral(nu, z);
}

// Wynn epsilon algorithm on a sequence of partial sums. Deep columns are
// sensitive to roundoff, so the estimate is taken from the column whose
// last entry moved least relative to the previous even column.
std::pair<double, double> wynn_epsilon(const std::vector<double>& s) {
  const int n = static_cast<int>(s.size());
  // e[i][k] holds eps_{k-1}^{(i)}; eps_{-1} = 0, eps_0 = s
  std::vector<std::vector<double>> e(n + 1, std::vector<double>(n + 2, 0.0));
  for (int i = 0; i < n; ++i) e[i][1] = s[i];
  for (int k = 2; k <= n; ++k)
    for (int i = 0; i + k - 1 < n; ++i) {
      const double d = e[i + 1][k - 1] - e[i][k - 1];
      e[i][k] = e[i + 1][k - 2] + (d == 0.0 ? 1e300 : 1.0 / d);
    }
  double best = s.back(), best_diff = std::abs(s[n - 1] - s[n - 2]);
  for (int k = 3; k <= n; k += 2) {
    const double cur = e[n - k][k];
    const double prev = e[n - k + 2][k - 2];
    const double diff = std::abs(cur - prev);
    if (std::abs(cur) < 1e100 && std::abs(prev) < 1e100 && diff < best_diff) {
      best = cur;
      best_diff = diff;
    }
  }
  return {best, best_diff};
}

}  // namespace

Gamma0Result gamma0_detail(double nu, int periods) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("gamma0: nu must lie in (0, 1]");
  Gamma0Result r;
  const Rule1D first = composite_rule(graded_breaks(0.0, pi, 4, 30, 0), 16);
  const Rule1D& gl = gauss_legendre(24);
  double total = 0.0;
  for (int k = 0; k < periods; ++k) {
    double s = 0.0;
    if (k == 0) {
      for (std::size_t j = 0; j < first.size(); ++j) s += first.w[j] * zeta_integrand(nu, first.x[j]);
    } else {
      const double c = (k + 0.5) * pi, h = 0.5 * pi;
      for (int j = 0; j < 24; ++j) s += h * gl.w[j] * zeta_integrand(nu, c + h * gl.x[j]);
    }
    r.period_integrals.push_back(s);
    total += s;
    r.partial_sums.push_back(total);
  }
  // accelerate the tail of the alternating partial sums
  std::vector<double> tail(r.partial_sums.end() - std::min<int>(periods, 21), r.partial_sums.end());
  const auto [best, diff] = wynn_epsilon(tail);
  r.value = best;
  r.error_estimate = diff;
  if (!(r.error_estimate < 1e-8))
    throw QuadratureError("gamma0 acceleration did not settle", r.error_estimate);
  return r;
}

double gamma0(double nu) { return gamma0_detail(nu).value; }

double omega_formula(double dphi1, double omega0, int n, double a_deriv, double c) {
  const double np1 = std::abs(n) + 1.0;
  return -0.5 * dphi1 * dphi1 * np1 + dphi1 * a_deriv * np1 - 0.5 * omega0 * omega0 + c;
}

ModeTable build_mode_table(const BaseState& base, int N) {
  if (N < 1) throw DomainError("build_mode_table: N must be >= 1");
  ModeTable t;
  t.N = N;
  t.c = c_table(base.icase, N);
  t.a_deriv.resize(N + 1);
  t.omega.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    t.a_deriv[n] = solve_An(n, base).deriv_at_1;
    t.omega[n] = omega_formula(base.dphi0_at_1, base.omega0, n, t.a_deriv[n], t.c[n]);
  }
  t.a0_deriv = t.a_deriv[0];
  return t;
}

}  // namespace tidaleq
