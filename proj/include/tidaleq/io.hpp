#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "tidaleq/linop.hpp"
#include "tidaleq/residual.hpp"

namespace tidaleq {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const BaseState& b);
json to_json(const ModeTable& t);
json to_json(const ScanReport& s);
/// {"N": N, "g0": g0, "g": [[re, im], ...]} with g[n-1] = g_n.
json to_json(const ShapeCoeffs& h);
ShapeCoeffs shape_from_json(const json& j);
json to_json(const Diagnostics& d);
json to_json(const EquilibriumSolution& s);

/// Writes to a temporary sibling and renames over the target.
void write_text_atomic(const std::string& path, const std::string& text);
/// Adds "schema_version" and writes pretty JSON.
void write_json_atomic(const std::string& path, json j);
void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

/// Rows (r, value) on the collocation nodes.
std::vector<std::vector<double>> profile_rows(const RadialProfile& p);
/// Rows (n, A_n'(1), c_n, omega_n).
std::vector<std::vector<double>> mode_rows(const ModeTable& t);
/// Rows (phi, x1, x2) of the boundary f_h(e^{i phi}) on M points.
std::vector<std::vector<double>> boundary_rows(const ShapeCoeffs& h, int M);
/// Rows (iteration, residual_norm, f1_sup, r2, r3, step_norm).
std::vector<std::vector<double>> history_rows(const std::vector<IterateRecord>& h);

}  // namespace tidaleq
