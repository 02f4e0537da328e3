#include <benchmark/benchmark.h>

#include <cmath>

#include "toricap/capacities.hpp"
#include "toricap/starshaped_flow.hpp"

using namespace toricap;

namespace {

void bm_boundary_point(benchmark::State& state) {
  const MomentRegion region = build_counterexample(0.1, 200.0, 16.0);
  int k = 0;
  for (auto _ : state) {
    const double phi = 1e-3 + (kPi / 2.0 - 2e-3) * halton(k++ & 1023, 2);
    benchmark::DoNotOptimize(boundary_point(region, {std::cos(phi), std::sin(phi)}));
  }
}
BENCHMARK(bm_boundary_point);

void bm_gromov_width(benchmark::State& state) {
  const MomentRegion region = build_ellipsoid({1.0, 2.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(gromov_width(region, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(bm_gromov_width)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);

void bm_enumerate_fibers(benchmark::State& state) {
  const MomentRegion region = build_concave_sqrt(2, 1.0);
  EnumOptions opts;
  opts.height = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_rational_fibers(region, opts));
  }
}
BENCHMARK(bm_enumerate_fibers)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void bm_integrate_flow(benchmark::State& state) {
  const MomentRegion region = build_ellipsoid({1.0, 2.0});
  const StarShapedDomain dom = toric_induced(region);
  const Vec z0 = ambient_point(boundary_point(region, normalized(Vec{1.0, 1.0})), {0.3, 1.1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_flow(dom, z0, static_cast<double>(state.range(0))));
  }
}
BENCHMARK(bm_integrate_flow)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void bm_min_chord_period(benchmark::State& state) {
  const MomentRegion region = build_convex_power(2, 1.0, 4.0);
  const LegendrianFiberTorus torus = legendrian_fiber(region, {2, 3}, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_chord_period(torus));
  }
}
BENCHMARK(bm_min_chord_period);

}  // namespace

BENCHMARK_MAIN();
