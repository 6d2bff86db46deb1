/* Apache License, Version 2.0 */
#pragma once

#include <filesystem>

#include "json.hpp"

#include "gmink/continuity.hpp"
#include "gmink/solver.hpp"

namespace gmink {

/// Body JSON: {"dim": n, "normals": [[...]], "support_numbers": [...]}.
/// Normals are checked for unit norm.
Polytope body_from_json(const nlohmann::json& j);
nlohmann::ordered_json body_to_json(const Polytope& body);
Polytope load_body(const std::filesystem::path& path);
void save_body(const Polytope& body, const std::filesystem::path& path);

/// Measure JSON: {"dim": n, "atoms": [{"u": [...], "mass": m}, ...]}.
SphereMeasure measure_from_json(const nlohmann::json& j);
nlohmann::ordered_json measure_to_json(const SphereMeasure& mu);
SphereMeasure load_measure(const std::filesystem::path& path);
void save_measure(const SphereMeasure& mu, const std::filesystem::path& path);

/// Solver report with the solution body and the full iteration trace.
nlohmann::ordered_json report_to_json(const SolverReport& report);
SolverReport report_from_json(const nlohmann::json& j);
void save_report(const SolverReport& report, const std::filesystem::path& path);
SolverReport load_report(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::ordered_json& j,
                     const std::filesystem::path& path);

}  // namespace gmink
