/* Apache License, Version 2.0 */
#include "gmink/continuity.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "gmink/rng.hpp"
#include "json.hpp"

namespace gmink {

namespace {
constexpr double kPi = std::numbers::pi;
}

WeakDistanceRule WeakDistanceRule::standard(int dim) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("WeakDistanceRule: dim must be 2 or 3");
  WeakDistanceRule rule;
  rule.dim = dim;
  auto& f = rule.test_family;
  f.emplace_back([](const Vec3&) { return 1.0; });
  for (int j = 0; j < dim; ++j)
    f.emplace_back([j](const Vec3& u) { return u[j]; });
  for (int j = 0; j < dim; ++j)
    for (int k = j; k < dim; ++k)
      f.emplace_back([j, k](const Vec3& u) { return u[j] * u[k]; });
  if (dim == 2) {
    for (int l = 0; l < 16; ++l) {
      const double t = 2.0 * kPi * l / 16.0;
      const Vec3 d(std::cos(t), std::sin(t), 0.0);
      f.emplace_back([d](const Vec3& u) { return std::max(0.0, u.dot(d)); });
    }
  } else {
    const SphericalGrid dirs = SphericalGrid::build(3, 16);
    for (const Vec3& d : dirs.nodes)
      f.emplace_back([d](const Vec3& u) { return std::max(0.0, u.dot(d)); });
  }
  return rule;
}

double weak_distance(const SphereMeasure& mu, const SphereMeasure& nu,
                     const WeakDistanceRule& rule) {
  if (mu.dim != nu.dim || mu.dim != rule.dim)
    throw std::invalid_argument("weak_distance: dimension mismatch");
  double best = 0.0;
  for (const auto& f : rule.test_family) {
    double a = 0.0, b = 0.0;
    for (const auto& atom : mu.atoms) a += f(atom.direction) * atom.mass;
    for (const auto& atom : nu.atoms) b += f(atom.direction) * atom.mass;
    best = std::max(best, std::abs(a - b));
  }
  return best;
}

namespace {

Vec3 rotate_in_plane(const Vec3& u, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return Vec3(c * u.x() - s * u.y(), s * u.x() + c * u.y(), u.z());
}

Vec3 rotate_about(const Vec3& u, const Vec3& axis, double angle) {
  // Rodrigues rotation, axis unit.
  const double c = std::cos(angle), s = std::sin(angle);
  return u * c + axis.cross(u) * s + axis * axis.dot(u) * (1.0 - c);
}

}  // namespace

std::vector<ExperimentRecord> run_measure_continuity(
    const GaussianContext& ctx, const Polytope& K0, double p,
    const std::vector<double>& deltas, const SolverConfig& cfg,
    const SphericalGrid& grid, std::uint64_t seed) {
  if (K0.redundant_count() > 0)
    throw std::invalid_argument(
        "run_measure_continuity: base body has redundant facets (zero-mass atoms)");
  const SphereMeasure mu0 = lp_surface_measure(ctx, K0, p);
  const WeakDistanceRule rule = WeakDistanceRule::standard(ctx.dim());

  // One jitter pattern per atom, scaled by delta_i.
  SplitMix64 rng(seed);
  std::vector<double> mass_jitter(mu0.atoms.size());
  std::vector<double> dir_jitter(mu0.atoms.size());
  std::vector<Vec3> axes(mu0.atoms.size());
  for (std::size_t j = 0; j < mu0.atoms.size(); ++j) {
    mass_jitter[j] = rng.symmetric();
    dir_jitter[j] = rng.symmetric();
    if (ctx.dim() == 3) {
      const Vec3 raw(rng.symmetric(), rng.symmetric(), rng.symmetric());
      const Vec3 t = raw - raw.dot(mu0.atoms[j].direction) * mu0.atoms[j].direction;
      axes[j] = t.norm() > 1e-12 ? Vec3(t / t.norm())
                                 : Vec3(mu0.atoms[j].direction.unitOrthogonal());
    }
  }

  std::vector<ExperimentRecord> records;
  records.reserve(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    SphereMeasure mu = mu0;
    for (std::size_t j = 0; j < mu.atoms.size(); ++j) {
      mu.atoms[j].mass *= 1.0 + delta * mass_jitter[j];
      mu.atoms[j].direction =
          ctx.dim() == 2
              ? rotate_in_plane(mu.atoms[j].direction, delta * dir_jitter[j])
              : rotate_about(mu.atoms[j].direction, axes[j], delta * dir_jitter[j]);
    }
    SolverReport report = solve_discrete(ctx, mu, p, cfg);
    if (!report.ok())
      throw std::runtime_error("run_measure_continuity: record " + std::to_string(i) +
                               " failed with status " + to_string(report.status));
    ExperimentRecord rec;
    rec.index = static_cast<int>(i);
    rec.delta_or_p = delta;
    rec.weak_distance = weak_distance(mu, mu0, rule);
    rec.hausdorff_distance = hausdorff_distance(report.solution, K0, grid);
    rec.gauss_volume = report.gauss_volume;
    rec.max_radial = report.solution.max_radial().first;
    rec.iterations = report.iterations;
    records.push_back(rec);
  }
  return records;
}

std::vector<ExperimentRecord> run_p_continuity(const GaussianContext& ctx,
                                               const Polytope& K0, double p0,
                                               const std::vector<double>& ps,
                                               const SolverConfig& cfg,
                                               const SphericalGrid& grid) {
  if (!(p0 >= 1.0)) throw std::invalid_argument("run_p_continuity: requires p0 >= 1");
  for (double p : ps)
    if (!(p >= 1.0) || !(p < 2.0 * p0))
      throw std::invalid_argument(
          "run_p_continuity: schedule must satisfy 1 <= p_i < 2 p0");
  if (K0.redundant_count() > 0)
    throw std::invalid_argument("run_p_continuity: base body has redundant facets");

  const SphereMeasure mu = lp_surface_measure(ctx, K0, p0);
  const WeakDistanceRule rule = WeakDistanceRule::standard(ctx.dim());
  std::vector<ExperimentRecord> records;
  records.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    SolverReport report = solve_discrete(ctx, mu, ps[i], cfg);
    if (!report.ok())
      throw std::runtime_error("run_p_continuity: record " + std::to_string(i) +
                               " failed with status " + to_string(report.status));
    ExperimentRecord rec;
    rec.index = static_cast<int>(i);
    rec.delta_or_p = ps[i];
    rec.weak_distance =
        weak_distance(lp_surface_measure(ctx, report.solution, ps[i]), mu, rule);
    rec.hausdorff_distance = hausdorff_distance(report.solution, K0, grid);
    rec.gauss_volume = report.gauss_volume;
    rec.max_radial = report.solution.max_radial().first;
    rec.iterations = report.iterations;
    records.push_back(rec);
  }
  return records;
}

void emit_report(const std::vector<ExperimentRecord>& records,
                 const std::filesystem::path& csv_path,
                 const std::filesystem::path& summary_path) {
  std::ofstream csv(csv_path);
  if (!csv)
    throw std::runtime_error("emit_report: cannot open " + csv_path.string());
  csv << "index,delta_or_p,weak_distance,hausdorff_distance,gauss_volume,"
         "max_radial,iterations\n";
  char buf[512];
  for (const ExperimentRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n",
                  r.index, r.delta_or_p, r.weak_distance, r.hausdorff_distance,
                  r.gauss_volume, r.max_radial, r.iterations);
    csv << buf;
  }
  csv.close();
  if (!csv)
    throw std::runtime_error("emit_report: write failed for " + csv_path.string());

  nlohmann::ordered_json summary;
  summary["records"] = records.size();
  const auto minmax = [&](auto field) {
    nlohmann::ordered_json j;
    if (records.empty()) return j;
    double lo = field(records.front()), hi = lo;
    for (const ExperimentRecord& r : records) {
      lo = std::min(lo, field(r));
      hi = std::max(hi, field(r));
    }
    j["min"] = lo;
    j["max"] = hi;
    return j;
  };
  summary["weak_distance"] = minmax([](const ExperimentRecord& r) { return r.weak_distance; });
  summary["hausdorff_distance"] =
      minmax([](const ExperimentRecord& r) { return r.hausdorff_distance; });
  summary["gauss_volume"] = minmax([](const ExperimentRecord& r) { return r.gauss_volume; });
  summary["max_radial"] = minmax([](const ExperimentRecord& r) { return r.max_radial; });
  if (!records.empty()) {
    const ExperimentRecord& r = records.back();
    summary["final"] = {{"index", r.index},
                        {"delta_or_p", r.delta_or_p},
                        {"weak_distance", r.weak_distance},
                        {"hausdorff_distance", r.hausdorff_distance},
                        {"gauss_volume", r.gauss_volume},
                        {"max_radial", r.max_radial},
                        {"iterations", r.iterations}};
  }
  std::ofstream out(summary_path);
  if (!out)
    throw std::runtime_error("emit_report: cannot open " + summary_path.string());
  out << summary.dump(2) << "\n";
}

}  // namespace gmink
