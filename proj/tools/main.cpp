// tidaleq command line: base, scan, perturb, solve, verify.
#include <CLI11.hpp>

#include <atomic>
#include <exception>
#include <filesystem>
#include <iostream>
#include <thread>

#include "tidaleq/acceptance.hpp"
#include "tidaleq/config.hpp"
#include "tidaleq/errors.hpp"
#include "tidaleq/io.hpp"

using namespace tidaleq;
namespace fs = std::filesystem;

namespace {

const char* kFiles = R"(Output files (CSV columns):
  base:    base.json, phi0.csv (r, phi0)
  scan:    scan.json, modes.json, modes.csv (n, A_deriv, c, omega)
  perturb: perturb.json, perturb_<k>.json, boundary_<k>.csv (phi, x1, x2)
  solve:   solve.json, solution_<k>.json, boundary_<k>.csv (phi, x1, x2),
           history_<k>.csv (iteration, residual_norm, f1_sup, r2, r3, step_norm)
  verify:  verify.json
  <k> indexes the m values of the config in order.
Exit codes: 0 ok, 1 verification failure, 2 config, 3 resonance, 4 divergence, 5 quadrature.
)";

std::string path_in(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

LinearizedOperator make_operator(const RunConfig& cfg, const BaseState& base) {
  LinopOptions lo;
  lo.disk_radial = cfg.disk_radial;
  lo.disk_angular = cfg.disk_angular;
  lo.resonance_tol = cfg.resonance_tol;
  return assemble_operator(base, build_mode_table(base, cfg.modes), lo);
}

// Runs fn(k) for every m index on cfg.workers threads; rethrows the first
// failure in sweep order.
template <class Fn>
void sweep(const RunConfig& cfg, Fn fn) {
  const std::size_t n = cfg.m.size();
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next++) < n;) {
      try {
        fn(k);
      } catch (...) {
        errs[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::min<int>(cfg.workers, int(n)); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

int cmd_base(const RunConfig& cfg, const std::string& out) {
  const BaseState b = base_from(cfg);
  write_json_atomic(path_in(out, "base.json"), to_json(b));
  write_csv_atomic(path_in(out, "phi0.csv"), {"r", "phi0"}, profile_rows(b.phi0));
  std::cout << "base: " << b.icase.label() << " a0 = " << b.a0 << " omega0 = " << b.omega0
            << " lambda0 = " << b.lambda0 << "\n";
  return 0;
}

int cmd_scan(const RunConfig& cfg, const std::string& out) {
  const BaseState b = base_from(cfg);
  const ModeTable t = build_mode_table(b, cfg.modes);
  const ScanReport rep = nonresonance_scan(b, t, cfg.margin_factor, cfg.resonance_tol);
  write_csv_atomic(path_in(out, "modes.csv"), {"n", "A_deriv", "c", "omega"}, mode_rows(t));
  write_json_atomic(path_in(out, "modes.json"), to_json(t));
  write_json_atomic(path_in(out, "scan.json"), to_json(rep));
  std::cout << "scan: min |omega_n| = " << rep.min_abs_omega << " at n = " << rep.argmin_n
            << ", tail certified from " << rep.tail_certified_from << "\n";
  if (!rep.resonances.empty()) {
    std::cerr << "resonant modes:";
    for (int n : rep.resonances) std::cerr << " " << n;
    std::cerr << "\n";
    return int(ExitCode::resonance);
  }
  return 0;
}

int cmd_perturb(const RunConfig& cfg, const std::string& out) {
  const BaseState b = base_from(cfg);
  const LinearizedOperator op = make_operator(cfg, b);
  std::vector<json> entries(cfg.m.size());
  sweep(cfg, [&](std::size_t k) {
    const double m = cfg.m[k];
    const FirstOrder fo = first_order_response(op, m, cfg.angular_nodes);
    json j{{"m", m}, {"a", b.a0 + fo.a1}, {"lambda", b.lambda0 + fo.lambda1}, {"h", to_json(fo.h1)}};
    write_json_atomic(path_in(out, "perturb_" + std::to_string(k) + ".json"), j);
    write_csv_atomic(path_in(out, "boundary_" + std::to_string(k) + ".csv"), {"phi", "x1", "x2"},
                     boundary_rows(fo.h1, std::max(cfg.angular_nodes, 2 * fo.h1.N() + 2)));
    entries[k] = json{{"m", m}, {"a", b.a0 + fo.a1}, {"lambda", b.lambda0 + fo.lambda1},
                      {"max_abs_h", fo.h1.max_abs()}};
  });
  write_json_atomic(path_in(out, "perturb.json"), json{{"base", to_json(b)}, {"runs", entries}});
  for (const auto& e : entries) std::cout << "perturb: m = " << e["m"] << " a = " << e["a"] << "\n";
  return 0;
}

int cmd_solve(const RunConfig& cfg, const std::string& out) {
  const BaseState b = base_from(cfg);
  const LinearizedOperator op = make_operator(cfg, b);
  SolveOptions so;
  so.residual.phi.radial_nodes = cfg.radial_nodes;
  so.residual.phi.angular = cfg.angular_nodes;
  so.residual.phi.picard_tol = cfg.picard_tol;
  so.residual.disk_radial = cfg.disk_radial;
  so.residual.disk_angular = cfg.disk_angular;
  so.tol = cfg.solve_tol;
  so.max_iterations = cfg.max_iterations;
  so.divergence_window = cfg.divergence_window;
  so.m_cap = cfg.m_cap;
  std::vector<json> entries(cfg.m.size());
  sweep(cfg, [&](std::size_t k) {
    const std::string tag = std::to_string(k);
    try {
      const EquilibriumSolution s = quasi_newton_solve(op, cfg.m[k], so);
      write_json_atomic(path_in(out, "solution_" + tag + ".json"), to_json(s));
      write_csv_atomic(path_in(out, "boundary_" + tag + ".csv"), {"phi", "x1", "x2"},
                       boundary_rows(s.h, cfg.angular_nodes));
      write_csv_atomic(path_in(out, "history_" + tag + ".csv"),
                       {"iteration", "residual_norm", "f1_sup", "r2", "r3", "step_norm"}, history_rows(s.history));
      entries[k] = json{{"m", s.m}, {"a", s.a}, {"lambda", s.lambda}, {"residual_norm", s.residual_norm},
                        {"iterations", s.iterations}};
    } catch (const DivergenceError& e) {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < e.history().size(); ++i) rows.push_back({double(i), e.history()[i]});
      write_csv_atomic(path_in(out, "history_" + tag + ".csv"), {"iteration", "residual_norm"}, rows);
      throw;
    }
  });
  write_json_atomic(path_in(out, "solve.json"), json{{"base", to_json(b)}, {"runs", entries}});
  for (const auto& e : entries)
    std::cout << "solve: m = " << e["m"] << " residual = " << e["residual_norm"] << " iterations = "
              << e["iterations"] << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& out, const std::vector<int>& only) {
  AcceptanceOptions ao;
  ao.radial_nodes = cfg.radial_nodes;
  ao.angular_nodes = cfg.angular_nodes;
  ao.modes = cfg.modes;
  ao.workers = cfg.workers;
  ao.seed = cfg.seed;
  const auto results = run_acceptance(ao, only);
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back(json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail},
                       {"metrics", r.metrics}, {"seconds", r.seconds}});
    std::cout << "criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << "  " << r.title << ": "
              << r.detail << "\n";
  }
  write_json_atomic(path_in(out, "verify.json"), json{{"all_pass", all}, {"criteria", arr}});
  return all ? 0 : int(ExitCode::failure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating fluid equilibria perturbed by a point mass"};
  app.footer(std::string(kFiles) + "\n" + config_help());
  app.require_subcommand(1);
  std::string config, out;
  std::vector<int> only;
  const char* names[] = {"base", "scan", "perturb", "solve", "verify"};
  const char* help[] = {"solve the m = 0 state", "mode table and non-resonance scan",
                        "first-order response for each m", "quasi-Newton solve for each m",
                        "run the acceptance criteria"};
  for (int i = 0; i < 5; ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    auto* opt = sub->add_option("--config", config, "flat key = value config file");
    if (i < 4) opt->required();
    sub->add_option("--out", out, "output directory")->required();
    if (i == 4) sub->add_option("--only", only, "criterion numbers to run")->delimiter(',');
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : int(ExitCode::config);
  }
  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    if (!config.empty()) cfg = load_config(config);
    if (cmd == "verify" && config.empty()) cfg.a0 = 3.0;
    fs::create_directories(out);
    if (cmd == "base") return cmd_base(cfg, out);
    if (cmd == "scan") return cmd_scan(cfg, out);
    if (cmd == "perturb") return cmd_perturb(cfg, out);
    if (cmd == "solve") return cmd_solve(cfg, out);
    return cmd_verify(cfg, out, only);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return int(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return int(ExitCode::failure);
  }
}
