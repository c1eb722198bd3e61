#include "tidaleq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tidaleq/errors.hpp"

namespace tidaleq {

json to_json(const BaseState& b) {
  return json{{"interaction", b.icase.label()},
              {"omega0", b.omega0},
              {"a0", b.a0},
              {"lambda0", b.lambda0},
              {"dphi0_at_1", b.dphi0_at_1},
              {"G_at_boundary", b.g_at_boundary},
              {"profile", b.G.name()},
              {"U0_at_1", b.u0_at_1},
              {"U0_d2_at_a0", b.u0_d2_at_a0},
              {"phi0", {{"r", b.phi0.nodes}, {"value", b.phi0.values}, {"residual", b.phi0.residual}}}};
}

json to_json(const ModeTable& t) {
  return json{{"N", t.N}, {"A_deriv", t.a_deriv}, {"c", t.c}, {"omega", t.omega}};
}

json to_json(const ScanReport& s) {
  return json{{"min_abs_omega", s.min_abs_omega},
              {"argmin_n", s.argmin_n},
              {"tail_certified_from", s.tail_certified_from < 0 ? json(nullptr) : json(s.tail_certified_from)},
              {"resonances", s.resonances},
              {"margin_factor", s.margin_factor},
              {"tol", s.tol}};
}

json to_json(const ShapeCoeffs& h) {
  json g = json::array();
  for (int n = 1; n <= h.N(); ++n) g.push_back({h.coeff(n).real(), h.coeff(n).imag()});
  return json{{"N", h.N()}, {"g0", h.g0()}, {"g", g}};
}

ShapeCoeffs shape_from_json(const json& j) {
  const int N = j.at("N").get<int>();
  const auto& g = j.at("g");
  if (!g.is_array() || int(g.size()) != N) throw ConfigError("shape JSON: g must have N entries");
  ShapeCoeffs h(N);
  h.set_g0(j.at("g0").get<double>());
  for (int n = 1; n <= N; ++n) h.set(n, cplx(g[n - 1].at(0).get<double>(), g[n - 1].at(1).get<double>()));
  return h;
}

json to_json(const Diagnostics& d) {
  return json{{"area_error", d.area_error},
              {"center_of_mass", {d.center_of_mass[0], d.center_of_mass[1]}},
              {"symmetry_defect", d.symmetry_defect},
              {"injectivity_margin", d.injectivity_margin},
              {"pressure_jump_sup", d.pressure_jump_sup},
              {"tangential_sup", d.tangential_sup}};
}

json to_json(const EquilibriumSolution& s) {
  return json{{"m", s.m},
              {"a", s.a},
              {"lambda", s.lambda},
              {"residual_norm", s.residual_norm},
              {"iterations", s.iterations},
              {"h", to_json(s.h)},
              {"diagnostics", to_json(s.diagnostics)}};
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_json_atomic(const std::string& path, json j) {
  j["schema_version"] = kSchemaVersion;
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  write_text_atomic(path, os.str());
}

std::vector<std::vector<double>> profile_rows(const RadialProfile& p) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) rows.push_back({p.nodes[i], p.values[i]});
  return rows;
}

std::vector<std::vector<double>> mode_rows(const ModeTable& t) {
  std::vector<std::vector<double>> rows;
  for (int n = 0; n <= t.N; ++n) rows.push_back({double(n), t.a_deriv[n], t.c[n], t.omega[n]});
  return rows;
}

std::vector<std::vector<double>> boundary_rows(const ShapeCoeffs& h, int M) {
  const CircleValues v = eval_circle(h, M, 1.0);
  std::vector<std::vector<double>> rows;
  for (int j = 0; j < M; ++j)
    rows.push_back({2.0 * std::numbers::pi * j / M, v.f[j].real(), v.f[j].imag()});
  return rows;
}

std::vector<std::vector<double>> history_rows(const std::vector<IterateRecord>& h) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : h)
    rows.push_back({double(r.iteration), r.residual_norm, r.f1_sup, r.r2, r.r3, r.step_norm});
  return rows;
}

}  // namespace tidaleq
