#include "tidaleq/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tidaleq/errors.hpp"

namespace tidaleq {

VorticityProfile::VorticityProfile(std::string name, Fn g, Fn d1, Fn d2, Fn d3,
                                   bool monotone_certified) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->g = std::move(g);
  impl->d1 = std::move(d1);
  impl->d2 = std::move(d2);
  impl->d3 = std::move(d3);
  impl->certified = monotone_certified;
  impl_ = std::move(impl);
}

VorticityProfile constant_profile(double value) {
  auto zero = [](double) { return 0.0; };
  VorticityProfile p("constant", [value](double) { return value; }, zero, zero, zero, true);
  auto impl = std::make_shared<VorticityProfile::Impl>(*p.impl_);
  impl->constant = true;
  p.impl_ = std::move(impl);
  return p;
}

VorticityProfile rigid_preset(double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("rigid_preset: omega0 must be positive");
  VorticityProfile p = constant_profile(-2.0 * omega0);
  auto impl = std::make_shared<VorticityProfile::Impl>(*p.impl_);
  impl->name = "rigid";
  p.impl_ = std::move(impl);
  return p;
}

VorticityProfile affine_preset(double offset, double slope) {
  if (!(slope >= 0.0)) throw DomainError("affine_preset: slope must be non-negative");
  auto zero = [](double) { return 0.0; };
  return VorticityProfile(
      "affine", [offset, slope](double u) { return offset + slope * u; },
      [slope](double) { return slope; }, zero, zero, true);
}

namespace {

struct Hermite {
  std::vector<double> x, y, m;

  std::size_t seg(double u) const {
    auto it = std::upper_bound(x.begin(), x.end(), u);
    std::size_t k = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(k, x.size() - 2);
  }
  // derivative order 0..3 of the cubic on the containing segment
  double eval(double u, int order) const {
    if (u < x.front() || u > x.back()) {
      const bool left = u < x.front();
      const double x0 = left ? x.front() : x.back();
      const double y0 = left ? y.front() : y.back();
      const double m0 = left ? m.front() : m.back();
      if (order == 0) return y0 + m0 * (u - x0);
      return order == 1 ? m0 : 0.0;
    }
    const std::size_t k = seg(u);
    const double h = x[k + 1] - x[k];
    const double t = (u - x[k]) / h;
    const double y0 = y[k], y1 = y[k + 1], m0 = m[k] * h, m1 = m[k + 1] * h;
    // p(t) = y0 h00 + m0 h10 + y1 h01 + m1 h11
    const double a = 2 * y0 + m0 - 2 * y1 + m1;
    const double b = -3 * y0 - 2 * m0 + 3 * y1 - m1;
    const double c = m0, d = y0;
    switch (order) {
      case 0: return ((a * t + b) * t + c) * t + d;
      case 1: return ((3 * a * t + 2 * b) * t + c) / h;
      case 2: return (6 * a * t + 2 * b) / (h * h);
      default: return 6 * a / (h * h * h);
    }
  }
};

}  // namespace

VorticityProfile tabulated_profile(std::vector<double> u, std::vector<double> g) {
  if (u.size() != g.size() || u.size() < 2)
    throw DomainError("tabulated_profile: need at least two (u, G) pairs of equal length");
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (!(u[i + 1] > u[i])) throw DomainError("tabulated_profile: u must be strictly increasing");
    if (g[i + 1] < g[i])
      throw DomainError("tabulated_profile: G is not non-decreasing near u = " +
                        std::to_string(u[i]));
  }
  const std::size_t n = u.size();
  std::vector<double> delta(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (g[i + 1] - g[i]) / (u[i + 1] - u[i]);
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    m[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
  // Fritsch-Carlson limiter
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double al = m[i] / delta[i], be = m[i + 1] / delta[i];
    const double s = al * al + be * be;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m[i] = tau * al * delta[i];
      m[i + 1] = tau * be * delta[i];
    }
  }
  auto h = std::make_shared<Hermite>(Hermite{std::move(u), std::move(g), std::move(m)});
  VorticityProfile p(
      "table", [h](double v) { return h->eval(v, 0); }, [h](double v) { return h->eval(v, 1); },
      [h](double v) { return h->eval(v, 2); }, [h](double v) { return h->eval(v, 3); }, false);
  const double lo = h->x.front(), hi = h->x.back();
  if (!check_monotone(p, lo, hi))
    throw DomainError("tabulated_profile: interpolant fails the monotonicity check");
  return VorticityProfile("table", [h](double v) { return h->eval(v, 0); },
                          [h](double v) { return h->eval(v, 1); },
                          [h](double v) { return h->eval(v, 2); },
                          [h](double v) { return h->eval(v, 3); }, true);
}

VorticityProfile load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile table '" + path + "'");
  std::vector<double> u, g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a >> b)) {
      if (u.empty() && lineno == 1) continue;  // header
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    u.push_back(a);
    g.push_back(b);
  }
  try {
    return tabulated_profile(std::move(u), std::move(g));
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

bool check_monotone(const VorticityProfile& G, double lo, double hi, int samples) {
  double prev = G.eval(lo);
  for (int i = 0; i < samples; ++i) {
    const double u = lo + (hi - lo) * i / (samples - 1);
    const double v = G.eval(u);
    if (v < prev - 1e-14 * (1.0 + std::abs(prev))) return false;
    if (G.d1(u) < -1e-12) return false;
    prev = v;
  }
  return true;
}

}  // namespace tidaleq
