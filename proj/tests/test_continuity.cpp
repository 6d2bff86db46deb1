/* Apache License, Version 2.0 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmink/continuity.hpp"
#include "test_helpers.hpp"

using namespace gmink;
using namespace gmink::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("weak_distance: identity, mass gap, rotation sensitivity") {
  const WeakDistanceRule rule = WeakDistanceRule::standard(2);
  SphereMeasure a;
  a.dim = 2;
  a.atoms = {{Vec3(1, 0, 0), 1.0}};
  CHECK(weak_distance(a, a, rule) == 0.0);

  SphereMeasure b = a;
  b.atoms[0].mass = 2.0;
  CHECK(weak_distance(a, b, rule) == doctest::Approx(1.0));  // constant test fn

  double prev = 1e300;
  for (double angle : {0.4, 0.2, 0.1, 0.05}) {
    SphereMeasure c = a;
    c.atoms[0].direction = dir2(angle);
    const double d = weak_distance(a, c, rule);
    CHECK(d > 0.0);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.06);

  // symmetry and the triangle inequality on a few random triples
  const GaussianContext ctx(2);
  SplitMix64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const SphereMeasure x = gauss_surface_measure(ctx, random_polygon(rng, 6, 1.0, 2.0));
    const SphereMeasure y = gauss_surface_measure(ctx, random_polygon(rng, 7, 1.0, 2.0));
    const SphereMeasure z = gauss_surface_measure(ctx, random_polygon(rng, 8, 1.0, 2.0));
    const double dxy = weak_distance(x, y, rule);
    const double dyx = weak_distance(y, x, rule);
    CHECK(dxy == doctest::Approx(dyx).epsilon(1e-15));
    CHECK(dxy <= weak_distance(x, z, rule) + weak_distance(z, y, rule) + 1e-12);
  }
}

TEST_CASE("weak convergence follows Hausdorff convergence") {
  const GaussianContext ctx(2);
  const WeakDistanceRule rule = WeakDistanceRule::standard(2);
  const SphereMeasure limit = gauss_surface_measure(ctx, make_square(1.3));
  double prev = 1e300;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const SphereMeasure m = gauss_surface_measure(ctx, make_square(1.3 + eps));
    const double d = weak_distance(m, limit, rule);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 0.02);
}

TEST_CASE("run_measure_continuity: shrinking jitter tracks the base body") {
  const GaussianContext ctx(2);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const Polytope K0 = make_square(1.4);
  const std::vector<double> deltas = {0.1, 0.05, 0.025, 0.0125, 0.00625};
  const auto records =
      run_measure_continuity(ctx, K0, 1.0, deltas, SolverConfig{}, g, 42);
  REQUIRE(records.size() == deltas.size());
  for (std::size_t i = 1; i < records.size(); ++i) {
    CHECK(records[i].hausdorff_distance <
          records[i - 1].hausdorff_distance * 1.10);
    CHECK(records[i].weak_distance < records[i - 1].weak_distance);
  }
  for (const auto& r : records) {
    CHECK(r.gauss_volume >= 0.5 - 1e-9);
    CHECK(r.max_radial <= 10.0);
  }
  // response slope is about 2.2x delta for this seed
  CHECK(records.back().hausdorff_distance < 0.02);
}

TEST_CASE("run_measure_continuity: zero jitter reproduces the base body") {
  const GaussianContext ctx(2);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const Polytope K0 = make_square(1.4);
  const auto records = run_measure_continuity(ctx, K0, 1.0, {0.0, 0.0},
                                              SolverConfig{}, g, 42);
  for (const auto& r : records) {
    CHECK(r.weak_distance == 0.0);
    CHECK(r.hausdorff_distance < 1e-7);
  }
}

TEST_CASE("run_measure_continuity: constant jitter is a negative control") {
  const GaussianContext ctx(2);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const Polytope K0 = make_square(1.4);
  const std::vector<double> flat(5, 0.1);
  const auto records =
      run_measure_continuity(ctx, K0, 1.0, flat, SolverConfig{}, g, 42);
  for (const auto& r : records) CHECK(r.hausdorff_distance > 0.01);
}

TEST_CASE("run_p_continuity: ball family matches the scalar oracle") {
  const GaussianContext ctx(2);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const double r0 = 1.3;
  const Polytope K0 = ball_polytope(2, r0, 360);
  const double total = lp_surface_measure(ctx, K0, 2.0).total();

  std::vector<double> ps;
  for (int i = 1; i <= 6; ++i) {
    ps.push_back(2.0 - std::pow(2.0, -i));
    ps.push_back(2.0 + std::pow(2.0, -i));
  }
  SolverConfig cfg;
  cfg.jacobian = SolverConfig::Jacobian::n2_analytic;
  const auto records = run_p_continuity(ctx, K0, 2.0, ps, cfg, g);
  REQUIRE(records.size() == ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double r_oracle = ball_profile_root(2, ps[i], total, 1.17, 4.0);
    CHECK(records[i].hausdorff_distance <
          std::abs(r_oracle - r0) + 2e-5);  // tracks the oracle shift
    CHECK(records[i].gauss_volume >= 0.5 - 1e-9);
  }
  // distances shrink as p_i -> p0 within each sign branch
  CHECK(records[records.size() - 1].hausdorff_distance <
        records[1].hausdorff_distance);
  CHECK(records[records.size() - 2].hausdorff_distance <
        records[0].hausdorff_distance);
}

TEST_CASE("run_p_continuity: fixed p reproduces the base body") {
  const GaussianContext ctx(2);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const Polytope K0 = make_square(1.4);
  const auto records =
      run_p_continuity(ctx, K0, 1.5, {1.5, 1.5, 1.5}, SolverConfig{}, g);
  for (const auto& r : records) CHECK(r.hausdorff_distance < 1e-7);
}

TEST_CASE("run_p_continuity: schedule window is enforced") {
  const GaussianContext ctx(2);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const Polytope K0 = make_square(1.4);
  CHECK_THROWS_AS(run_p_continuity(ctx, K0, 1.0, {2.0}, SolverConfig{}, g),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_p_continuity(ctx, K0, 1.0, {0.5}, SolverConfig{}, g),
                  std::invalid_argument);
}

TEST_CASE("emit_report: header-only, consistency, determinism") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gmink_report_test";
  fs::create_directories(dir);

  // empty record list -> header only
  emit_report({}, dir / "empty.csv", dir / "empty.json");
  CHECK(slurp(dir / "empty.csv") ==
        "index,delta_or_p,weak_distance,hausdorff_distance,gauss_volume,"
        "max_radial,iterations\n");

  std::vector<ExperimentRecord> records;
  for (int i = 0; i < 8; ++i) {
    ExperimentRecord r;
    r.index = i;
    r.delta_or_p = 0.1 / (1 + i);
    r.weak_distance = 0.01 * (8 - i);
    r.hausdorff_distance = 0.02 * (8 - i);
    r.gauss_volume = 0.6 + 0.01 * i;
    r.max_radial = 2.0 + 0.1 * i;
    r.iterations = 5 + i;
    records.push_back(r);
  }
  emit_report(records, dir / "a.csv", dir / "a.json");
  emit_report(records, dir / "b.csv", dir / "b.json");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  const std::string csv = slurp(dir / "a.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);  // header + 8 rows

  const std::string summary = slurp(dir / "a.json");
  CHECK(summary.find("\"records\": 8") != std::string::npos);
  CHECK(summary.find("\"min\": 0.01") != std::string::npos);   // weak_distance min
  CHECK(summary.find("\"max\": 0.16") != std::string::npos);   // hausdorff max
  fs::remove_all(dir);
}
