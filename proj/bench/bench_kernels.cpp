/* Apache License, Version 2.0 */
// Serial reference vs OpenMP kernels on the quadrature-heavy paths.
// Run: ./bench/gmink_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "gmink/gaussian.hpp"
#include "gmink/rng.hpp"

using namespace gmink;

namespace {

Polytope dense_ball(int resolution) { return ball_polytope(2, 1.3, resolution); }

Polytope random_body() {
  SplitMix64 rng(17);
  std::vector<Vec3> normals;
  std::vector<double> values;
  const int m = 24;
  for (int j = 0; j < m; ++j) {
    const double t = 2.0 * 3.14159265358979 * (j + 0.1 + 0.8 * rng.uniform()) / m;
    normals.emplace_back(std::cos(t), std::sin(t), 0.0);
    values.push_back(rng.range(1.0, 2.0));
  }
  return Polytope::wulff_shape(2, normals, values);
}

void GridVolumeSerial(benchmark::State& state) {
  const GaussianContext ctx(2);
  const Polytope body = random_body();
  const SphericalGrid grid = SphericalGrid::build(2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::gaussian_volume_on_grid(ctx, body, grid));
}

void GridVolumeParallel(benchmark::State& state) {
  const GaussianContext ctx(2);
  const Polytope body = random_body();
  const SphericalGrid grid = SphericalGrid::build(2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(gaussian_volume_on_grid(ctx, body, grid));
}

void CosineBoundSerial(benchmark::State& state) {
  const GaussianContext ctx(2);
  const SphereMeasure mu = gauss_surface_measure(ctx, dense_ball(720));
  const SphericalGrid grid = SphericalGrid::build(2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::cosine_lower_bound(mu, 2.0, grid));
}

void CosineBoundParallel(benchmark::State& state) {
  const GaussianContext ctx(2);
  const SphereMeasure mu = gauss_surface_measure(ctx, dense_ball(720));
  const SphericalGrid grid = SphericalGrid::build(2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(cosine_lower_bound(mu, 2.0, grid));
}

void FacetMeasure(benchmark::State& state) {
  const GaussianContext ctx(2);
  const Polytope body = dense_ball(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(gauss_surface_measure(ctx, body));
}

void FacetVolume(benchmark::State& state) {
  const GaussianContext ctx(2);
  const Polytope body = dense_ball(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_volume(ctx, body));
}

}  // namespace

BENCHMARK(GridVolumeSerial)->Arg(2048)->Arg(16384);
BENCHMARK(GridVolumeParallel)->Arg(2048)->Arg(16384);
BENCHMARK(CosineBoundSerial)->Arg(2048)->Arg(16384);
BENCHMARK(CosineBoundParallel)->Arg(2048)->Arg(16384);
BENCHMARK(FacetMeasure)->Arg(360)->Arg(1440);
BENCHMARK(FacetVolume)->Arg(360)->Arg(1440);

BENCHMARK_MAIN();
