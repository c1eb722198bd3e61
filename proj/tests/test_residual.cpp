#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tidaleq/errors.hpp"
#include "tidaleq/linop.hpp"
#include "tidaleq/residual.hpp"

using namespace tidaleq;
using std::numbers::pi;

namespace {
LinearizedOperator make_op(const InteractionCase& c, double a0, const VorticityProfile* G = nullptr, int N = 256) {
  const BaseState b = make_base_state(c, a0, G ? *G : rigid_preset(omega_from_a0(c, a0)));
  return assemble_operator(b, build_mode_table(b, N));
}
std::vector<cplx> coeff_vector(const ShapeCoeffs& h) {
  std::vector<cplx> g;
  for (int n = 1; n <= h.N(); ++n) g.push_back(h.coeff(n));
  return g;
}
double first_order_norm(const LinearizedOperator& op, double m) {
  const FirstOrder fo = first_order_response(op, m, 256);
  ShapeCoeffs h(127);
  for (int n = 0; n <= 127; ++n) h.set(n, fo.h1.coeff(n));
  return residual_F(h, op.base.a0 + fo.a1, op.base.lambda0 + fo.lambda1, m, op.base, {}, nullptr, &op.disk).norm();
}
}  // namespace

TEST_CASE("stream function on the undeformed disk") {
  PhiOptions po;
  const DiskField f = solve_phi_h(ShapeCoeffs(8), rigid_preset(1.0), po);
  const auto& r = f.grid->r();
  for (int i = 0; i < r.size(); ++i)
    for (int j = 0; j < po.angular; j += 17) CHECK(std::abs(f.values(i, j) - (1 - r[i] * r[i]) / 2) < 1e-12);
  for (double d : f.normal_derivative) CHECK(d == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.tangential_sup() < 1e-9);

  const auto G = affine_preset(-2.0, 1.0);
  const RadialProfile p = solve_phi0(G);
  const DiskField g = solve_phi_h(ShapeCoeffs(8), G, po);
  for (int i = 0; i < r.size(); ++i)
    for (int j = 0; j < po.angular; j += 31) CHECK(std::abs(g.values(i, j) - p(r[i])) < 1e-8);
  CHECK(g.pde_residual < 1e-9);
}

TEST_CASE("stream function: dilation and flux identity") {
  const double w = 0.7, g0 = 0.1, R = 1 + g0;
  ShapeCoeffs h(4);
  h.set_g0(g0);
  const DiskField f = solve_phi_h(h, rigid_preset(w), {});
  for (double d : f.normal_derivative) CHECK(d == doctest::Approx(-w * R * R).epsilon(1e-11));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-1, 1);
  ShapeCoeffs s(10);
  s.set_g0(0.05 * U(rng));
  for (int n = 1; n <= 10; ++n) s.set(n, 0.08 * cplx(U(rng), U(rng)) * std::pow(0.6, n));
  REQUIRE(injectivity_margin(s) > 0);
  const DiskField fs = solve_phi_h(s, rigid_preset(w), {});
  double flux = 0.0;
  for (double d : fs.normal_derivative) flux += d * 2 * pi / fs.angular;
  CHECK(flux == doctest::Approx(-2 * w * area(s)).epsilon(1e-11));
  CHECK(fs.tangential_sup() < 1e-9);
}

TEST_CASE("stream function: linearization consistency with the mode ODE") {
  const auto G = affine_preset(-2.0, 1.0);
  const BaseState b = make_base_state(InteractionCase::log(), 3.0, G);
  for (int n : {1, 3}) {
    const RadialProfile A = solve_An(n, b);
    double err[2];
    for (int k = 0; k < 2; ++k) {
      const double eps = 1e-3 / (1 << k);
      ShapeCoeffs h(n + 1);
      h.set(n, eps);
      const DiskField f = solve_phi_h(h, G, {});
      const auto& r = f.grid->r();
      err[k] = 0.0;
      for (int i = 0; i < r.size(); ++i)
        for (int j = 0; j < f.angular; j += 5) {
          const double th = 2 * pi * j / f.angular;
          const double lin = b.phi0(r[i]) + eps * 2 * (n + 1) * A(r[i]) * std::cos(n * th);
          err[k] = std::max(err[k], std::abs(f.values(i, j) - lin));
        }
    }
    CHECK(err[0] < 1e-5);
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("stream function rejects non-injective shapes") {
  ShapeCoeffs h(3);
  h.set_g0(0.8);
  CHECK_THROWS_AS(solve_phi_h(h, rigid_preset(1.0), {}), DomainError);
}

TEST_CASE("boundary potential") {
  const auto a = boundary_potential(ShapeCoeffs(8), InteractionCase::power(1.0), 64);
  const double u1 = 0.5 * (oracle::u0_ray(1.0, 1 - 1e-8) + oracle::u0_ray(1.0, 1 + 1e-8));
  for (double v : a) CHECK(v == doctest::Approx(u1).epsilon(1e-7));
  for (double v : boundary_potential(ShapeCoeffs(8), InteractionCase::log(), 64)) CHECK(std::abs(v) < 1e-13);

  ShapeCoeffs h(6);
  h.set(1, 0.05);
  h.set(3, cplx(0.02, 0.01));
  h.set_g0(-0.01);
  const auto g = coeff_vector(h);
  for (double nu : {1.0, 0.5, 0.0}) {
    const auto c = nu == 0.0 ? InteractionCase::log() : InteractionCase::power(nu);
    const auto v = boundary_potential(h, c, 128);
    for (int j : {0, 17, 50, 99}) {
      const double ref = oracle::boundary_potential_polar(g, h.g0(), nu, 2 * pi * j / 128);
      CHECK(std::abs(v[j] - ref) < 1e-9);
    }
  }
  // g1 = eps shape: refinement converges (order >= 2)
  ShapeCoeffs e(2);
  e.set(1, 0.05);
  const auto c = InteractionCase::power(0.5);
  const auto f256 = boundary_potential(e, c, 256), f64 = boundary_potential(e, c, 64), f32 = boundary_potential(e, c, 32);
  double e64 = 0, e32 = 0;
  for (int j = 0; j < 32; ++j) {
    e64 = std::max(e64, std::abs(f64[2 * j] - f256[8 * j]));
    e32 = std::max(e32, std::abs(f32[j] - f256[8 * j]));
  }
  CHECK((e64 < 1e-13 || e32 / e64 >= 4.0));
}

TEST_CASE("particle force") {
  const DiskRule rule = make_disk_rule(64, 256);
  CHECK(particle_force(ShapeCoeffs(4), InteractionCase::log(), 2.0, rule) == doctest::Approx(pi / 2).epsilon(1e-13));
  const auto A = InteractionCase::power(1.0);
  CHECK(particle_force(ShapeCoeffs(4), A, 3.0, rule) == doctest::Approx(u0_d1(A, 3.0)).epsilon(1e-12));
  ShapeCoeffs s(5);
  s.set_g0(0.02);
  s.set(1, 0.04);
  s.set(4, -0.01);
  CHECK(std::abs(particle_force_vector(s, A, 2.5, rule)[1]) < 1e-10);
  s.set(2, cplx(0.0, 0.03));
  CHECK(std::abs(particle_force_vector(s, A, 2.5, rule)[1]) > 1e-4);
  CHECK_THROWS_AS(particle_force(ShapeCoeffs(4), A, 1.2, rule), DomainError);
  ShapeCoeffs near(2);
  near.set_g0(0.45);
  CHECK_THROWS_AS(particle_force(near, A, 1.5, rule), DomainError);
}

TEST_CASE("residual at the base state and lambda shift") {
  const auto G = affine_preset(-2.0, 1.0);
  for (auto [c, a0, g] : {std::tuple{InteractionCase::log(), 2.0, false}, std::tuple{InteractionCase::power(1.0), 3.0, false},
                          std::tuple{InteractionCase::log(), 3.0, true}}) {
    const auto op = make_op(c, a0, g ? &G : nullptr, 32);
    const ShapeCoeffs h(31);
    const auto r = residual_F(h, a0, op.base.lambda0, 0.0, op.base, {}, nullptr, &op.disk);
    CHECK(r.norm() < 1e-8);
    const auto s = residual_F(h, a0, op.base.lambda0 + 0.25, 0.0, op.base, {}, nullptr, &op.disk);
    for (std::size_t j = 0; j < r.f1.size(); ++j) CHECK(s.f1[j] - r.f1[j] == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(s.r2 == r.r2);
    CHECK(s.r3 == r.r3);
  }
}

TEST_CASE("first-order residual is second order in m (non-resonant a0 = 3)") {
  const auto G = affine_preset(-2.0, 1.0);
  for (auto [c, g] : {std::pair{InteractionCase::log(), false}, std::pair{InteractionCase::power(1.0), false},
                      std::pair{InteractionCase::power(0.5), false}, std::pair{InteractionCase::log(), true}}) {
    const auto op = make_op(c, 3.0, g ? &G : nullptr);
    const double ratio = first_order_norm(op, 1e-4) / first_order_norm(op, 5e-5);
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
  }
}

TEST_CASE("quasi-Newton solve") {
  const auto op = make_op(InteractionCase::log(), 3.0);
  SolveOptions so;
  const auto s0 = quasi_newton_solve(op, 0.0, so);
  CHECK(s0.iterations == 0);
  CHECK(s0.h.max_abs() == 0.0);
  CHECK(s0.a == op.base.a0);
  CHECK(s0.lambda == op.base.lambda0);

  const double m = 1e-4;
  const auto s = quasi_newton_solve(op, m, so);
  const auto& d = s.diagnostics;
  CHECK(s.residual_norm < 1e-8);
  CHECK(d.area_error < 1e-8);
  CHECK(d.symmetry_defect < 1e-10);
  CHECK(std::hypot(d.center_of_mass[0], d.center_of_mass[1]) < 1e-6);
  CHECK(d.tangential_sup < 1e-9);
  CHECK(d.pressure_jump_sup < 1e-8);
  CHECK(d.injectivity_margin > 0.0);
  CHECK(s.a < op.base.a0);

  // continuity in m and agreement with the first-order response
  const auto s2 = quasi_newton_solve(op, m / 2, so), s4 = quasi_newton_solve(op, m / 4, so);
  const double d12 = (s.h - s2.h).max_abs(), d24 = (s2.h - s4.h).max_abs();
  CHECK(d12 / d24 == doctest::Approx(2.0).epsilon(0.05));
  double lin[2];
  int k = 0;
  for (const auto* sol : {&s, &s2}) {
    const FirstOrder fo = first_order_response(op, sol->m, 256);
    ShapeCoeffs h1(sol->h.N());
    for (int n = 0; n <= h1.N(); ++n) h1.set(n, fo.h1.coeff(n));
    lin[k++] = (sol->h - h1).max_abs() + std::abs(sol->a - op.base.a0 - fo.a1);
  }
  CHECK(lin[0] / lin[1] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("quasi-Newton error paths") {
  const auto res = make_op(InteractionCase::log(), 2.0, nullptr, 64);
  CHECK_THROWS_AS(quasi_newton_solve(res, 1e-4, {}), ResonanceError);
  const auto op = make_op(InteractionCase::log(), 3.0, nullptr, 64);
  CHECK(default_m_cap(op, 256) > 1e-4);
  CHECK_THROWS_AS(quasi_newton_solve(op, 1.0, {}), DomainError);
  SolveOptions so;
  so.max_iterations = 0;
  try {
    quasi_newton_solve(op, 1e-4, so);
    CHECK(false);
  } catch (const DivergenceError& e) {
    CHECK(e.history().size() == 1);
    CHECK(int(e.exit_code()) == 4);
  }
}
