#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tidaleq/potential.hpp"

namespace tidaleq {

/// Flat key = value run configuration. See config_help() for keys and units.
struct RunConfig {
  std::string interaction = "B";  // "B" or "A:<nu>"
  std::optional<double> a0;
  std::optional<double> omega0;
  double a0_min = 2.0;

  std::string profile = "rigid";  // rigid | affine | constant | table
  double profile_offset = -2.0;
  double profile_slope = 0.0;
  double profile_value = 0.0;
  std::string profile_csv;

  int modes = 256;
  int radial_nodes = 128;
  int angular_nodes = 256;
  int disk_radial = 64;
  int disk_angular = 0;

  double resonance_tol = 1e-9;
  double margin_factor = 2.0;
  double solve_tol = 1e-8;
  double picard_tol = 1e-13;
  int max_iterations = 50;
  int divergence_window = 3;
  std::vector<double> m = {1e-4};
  double m_cap = -1.0;

  int workers = 1;
  std::uint64_t seed = 20240611;
};

/// Throws ConfigError on syntax errors, unknown or repeated keys, bad values
/// and violated invariants.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
/// Checks the cross-key invariants (exactly one of a0/omega0, positivity, N >= 8).
void validate(const RunConfig& cfg);
/// One line per key: name, default, unit, meaning.
std::string config_help();

InteractionCase interaction_from(const RunConfig& cfg);
/// G for the given rotation rate (the rigid preset needs it).
VorticityProfile profile_from(const RunConfig& cfg, double omega0);
/// Resolves a0/omega0 and builds the m = 0 state.
BaseState base_from(const RunConfig& cfg);

}  // namespace tidaleq
