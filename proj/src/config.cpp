#include "tidaleq/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "tidaleq/errors.hpp"

namespace tidaleq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

struct KeyInfo {
  const char* unit;
  const char* help;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

const std::map<std::string, KeyInfo>& keys() {
  static const std::map<std::string, KeyInfo> k = {
      {"interaction", {"-", "kernel: B (logarithmic) or A:<nu> with 0 < nu <= 1",
                       [](RunConfig& c, const std::string&, const std::string& v) { c.interaction = v; }}},
      {"a0", {"disk radii", "particle distance at m = 0 (give a0 or omega0)",
              [](RunConfig& c, const std::string& k, const std::string& v) { c.a0 = to_double(k, v); }}},
      {"omega0", {"1/time", "rotation rate at m = 0 (give a0 or omega0)",
                  [](RunConfig& c, const std::string& k, const std::string& v) { c.omega0 = to_double(k, v); }}},
      {"a0_min", {"disk radii", "lower end of the a0 search when omega0 is given",
                  [](RunConfig& c, const std::string& k, const std::string& v) { c.a0_min = to_double(k, v); }}},
      {"profile", {"-", "vorticity function G: rigid | affine | constant | table",
                   [](RunConfig& c, const std::string&, const std::string& v) { c.profile = v; }}},
      {"profile_offset", {"1/time", "affine G(u) = offset + slope u: offset",
                          [](RunConfig& c, const std::string& k, const std::string& v) { c.profile_offset = to_double(k, v); }}},
      {"profile_slope", {"1/(time stream)", "affine G: slope (>= 0)",
                         [](RunConfig& c, const std::string& k, const std::string& v) { c.profile_slope = to_double(k, v); }}},
      {"profile_value", {"1/time", "constant G value (0 is the degenerate case)",
                         [](RunConfig& c, const std::string& k, const std::string& v) { c.profile_value = to_double(k, v); }}},
      {"profile_csv", {"path", "two-column CSV (u, G) for profile = table",
                       [](RunConfig& c, const std::string&, const std::string& v) { c.profile_csv = v; }}},
      {"modes", {"count", "mode truncation N (>= 8)",
                 [](RunConfig& c, const std::string& k, const std::string& v) { c.modes = int(to_int(k, v)); }}},
      {"radial_nodes", {"count", "Chebyshev nodes on [-1, 1] (even)",
                        [](RunConfig& c, const std::string& k, const std::string& v) { c.radial_nodes = int(to_int(k, v)); }}},
      {"angular_nodes", {"count", "boundary samples M for the nonlinear residual (even)",
                         [](RunConfig& c, const std::string& k, const std::string& v) { c.angular_nodes = int(to_int(k, v)); }}},
      {"disk_radial", {"count", "radial Gauss points of the disk rule for W and the particle force",
                       [](RunConfig& c, const std::string& k, const std::string& v) { c.disk_radial = int(to_int(k, v)); }}},
      {"disk_angular", {"count", "angular points of the disk rule (0: max(128, 2N + 34))",
                        [](RunConfig& c, const std::string& k, const std::string& v) { c.disk_angular = int(to_int(k, v)); }}},
      {"resonance_tol", {"1/time^2", "|omega_n| below this is a resonance",
                         [](RunConfig& c, const std::string& k, const std::string& v) { c.resonance_tol = to_double(k, v); }}},
      {"margin_factor", {"-", "tail certificate margin for the scan",
                         [](RunConfig& c, const std::string& k, const std::string& v) { c.margin_factor = to_double(k, v); }}},
      {"solve_tol", {"-", "quasi-Newton stopping tolerance on the residual sup norm",
                     [](RunConfig& c, const std::string& k, const std::string& v) { c.solve_tol = to_double(k, v); }}},
      {"picard_tol", {"-", "stream-function Picard increment tolerance",
                      [](RunConfig& c, const std::string& k, const std::string& v) { c.picard_tol = to_double(k, v); }}},
      {"max_iterations", {"count", "quasi-Newton iteration limit",
                          [](RunConfig& c, const std::string& k, const std::string& v) { c.max_iterations = int(to_int(k, v)); }}},
      {"divergence_window", {"count", "consecutive residual increases before giving up",
                             [](RunConfig& c, const std::string& k, const std::string& v) { c.divergence_window = int(to_int(k, v)); }}},
      {"m", {"mass", "particle mass, or comma separated sweep",
             [](RunConfig& c, const std::string& k, const std::string& v) {
               c.m.clear();
               std::stringstream ss(v);
               std::string item;
               while (std::getline(ss, item, ',')) c.m.push_back(to_double(k, trim(item)));
               if (c.m.empty()) throw ConfigError("config: 'm' is empty");
             }}},
      {"m_cap", {"mass", "largest admissible m (negative: automatic)",
                 [](RunConfig& c, const std::string& k, const std::string& v) { c.m_cap = to_double(k, v); }}},
      {"workers", {"count", "worker threads for independent sub-tasks",
                   [](RunConfig& c, const std::string& k, const std::string& v) { c.workers = int(to_int(k, v)); }}},
      {"seed", {"-", "seed for randomized verification checks",
                [](RunConfig& c, const std::string& k, const std::string& v) {
                  const long long s = to_int(k, v);
                  if (s < 0) throw ConfigError("config: seed must be non-negative");
                  c.seed = std::uint64_t(s);
                }}},
  };
  return k;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const auto it = keys().find(key);
    if (it == keys().end())
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    if (val.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    it->second.set(cfg, key, val);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

void validate(const RunConfig& c) {
  if (c.a0.has_value() == c.omega0.has_value())
    throw ConfigError("config: give exactly one of a0 and omega0");
  if (c.a0 && !(*c.a0 >= c.a0_min)) throw ConfigError("config: a0 must be >= a0_min");
  if (c.omega0 && !(*c.omega0 > 0.0)) throw ConfigError("config: omega0 must be positive");
  if (!(c.a0_min >= 1.0)) throw ConfigError("config: a0_min must be >= 1");
  if (c.modes < 8) throw ConfigError("config: modes must be >= 8");
  if (c.radial_nodes < 16 || c.radial_nodes % 2) throw ConfigError("config: radial_nodes must be even and >= 16");
  if (c.angular_nodes < 32 || c.angular_nodes % 2) throw ConfigError("config: angular_nodes must be even and >= 32");
  if (c.disk_radial < 8) throw ConfigError("config: disk_radial must be >= 8");
  if (c.disk_angular != 0 && c.disk_angular < 2 * c.modes + 4)
    throw ConfigError("config: disk_angular must be 0 or >= 2 modes + 4");
  for (double t : {c.resonance_tol, c.solve_tol, c.picard_tol, c.margin_factor})
    if (!(t > 0.0)) throw ConfigError("config: tolerances must be positive");
  if (c.max_iterations < 1 || c.divergence_window < 1)
    throw ConfigError("config: iteration limits must be positive");
  for (double m : c.m)
    if (!(m >= 0.0)) throw ConfigError("config: m must be non-negative");
  if (c.workers < 1) throw ConfigError("config: workers must be >= 1");
  if (c.profile != "rigid" && c.profile != "affine" && c.profile != "constant" && c.profile != "table")
    throw ConfigError("config: unknown profile '" + c.profile + "'");
  if (c.profile == "table" && c.profile_csv.empty())
    throw ConfigError("config: profile = table needs profile_csv");
  interaction_from(c);
}

std::string config_help() {
  std::ostringstream os;
  os << "Config keys (key = value, '#' comments, unknown keys are errors):\n";
  for (const auto& [k, info] : keys()) os << "  " << k << " [" << info.unit << "]  " << info.help << "\n";
  return os.str();
}

InteractionCase interaction_from(const RunConfig& c) {
  if (c.interaction == "B") return InteractionCase::log();
  if (c.interaction.rfind("A:", 0) == 0) {
    const double nu = to_double("interaction", c.interaction.substr(2));
    try {
      return InteractionCase::power(nu);
    } catch (const Error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  throw ConfigError("config: interaction must be B or A:<nu>");
}

VorticityProfile profile_from(const RunConfig& c, double omega0) {
  try {
    if (c.profile == "rigid") return rigid_preset(omega0);
    if (c.profile == "affine") return affine_preset(c.profile_offset, c.profile_slope);
    if (c.profile == "constant") return constant_profile(c.profile_value);
    return load_profile_csv(c.profile_csv);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

BaseState base_from(const RunConfig& c) {
  const InteractionCase ic = interaction_from(c);
  const double a0 = c.a0 ? *c.a0 : a0_from_omega(ic, *c.omega0, c.a0_min);
  const double omega0 = omega_from_a0(ic, a0);
  BaseOptions bo;
  bo.radial_nodes = c.radial_nodes;
  bo.a_min = c.a0_min;
  return make_base_state(ic, a0, profile_from(c, omega0), bo);
}

}  // namespace tidaleq
