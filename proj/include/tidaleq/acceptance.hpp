#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tidaleq/spectral.hpp"

namespace tidaleq {

struct AcceptanceOptions {
  int radial_nodes = 128;
  int angular_nodes = 256;
  int modes = 256;
  int workers = 1;
  std::uint64_t seed = 20240611;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  std::map<std::string, double> metrics;
  double seconds = 0.0;
};

inline constexpr int kCriteria = 10;

/// Runs one criterion (1..10). Never throws for numerical failures; those
/// are reported as a failed result with the error text in detail.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
/// Runs the given criteria (all when empty) on a pool of opts.workers threads.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::vector<int> ids = {});

/// O(M^2) check of the closed polygon through the points for crossings of
/// non-adjacent edges.
bool polygon_self_intersects(const std::vector<cplx>& pts);

}  // namespace tidaleq
