/* Apache License, Version 2.0 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gmink/solver.hpp"

namespace gmink {

/// Weak-convergence proxy: a fixed family of Lipschitz test functions
/// (constant, coordinates, pairwise coordinate products, 16 hinge functions);
/// the distance is the largest integral gap over the family. A finite family
/// only orders convergence, it does not metrize weak-* convergence; the
/// family is data so callers can extend it.
struct WeakDistanceRule {
  int dim = 2;
  std::vector<std::function<double(const Vec3&)>> test_family;

  static WeakDistanceRule standard(int dim);
};

double weak_distance(const SphereMeasure& mu, const SphereMeasure& nu,
                     const WeakDistanceRule& rule);

struct ExperimentRecord {
  int index = 0;
  double delta_or_p = 0.0;
  double weak_distance = 0.0;
  double hausdorff_distance = 0.0;
  double gauss_volume = 0.0;
  double max_radial = 0.0;
  int iterations = 0;
};

/// Theorem-1.1 experiment: perturb mu_0 = S_{p,gamma}(K0,.) with relative
/// mass jitter and direction jitter of size delta_i, solve each instance,
/// and record weak and Hausdorff gaps to the unperturbed data. The jitter
/// pattern is drawn once from the seed and scaled by delta_i, so a
/// decreasing schedule yields proportionally decreasing perturbations and a
/// constant schedule is a genuine negative control. A failed inner solve
/// throws with the record index.
std::vector<ExperimentRecord> run_measure_continuity(
    const GaussianContext& ctx, const Polytope& K0, double p,
    const std::vector<double>& deltas, const SolverConfig& cfg,
    const SphericalGrid& grid, std::uint64_t seed);

/// Theorem-1.2 experiment: fix mu = S_{p0,gamma}(K0,.) and solve
/// S_{p_i,gamma}(K_i,.) = mu along a schedule p_i -> p0 with
/// 1 <= p_i < 2 p0.
std::vector<ExperimentRecord> run_p_continuity(const GaussianContext& ctx,
                                               const Polytope& K0, double p0,
                                               const std::vector<double>& ps,
                                               const SolverConfig& cfg,
                                               const SphericalGrid& grid);

/// CSV (one row per record, columns: index, delta_or_p, weak_distance,
/// hausdorff_distance, gauss_volume, max_radial, iterations) plus a JSON
/// summary with per-column min/max and the final record. Deterministic
/// formatting: identical runs produce identical bytes.
void emit_report(const std::vector<ExperimentRecord>& records,
                 const std::filesystem::path& csv_path,
                 const std::filesystem::path& summary_path);

}  // namespace gmink
