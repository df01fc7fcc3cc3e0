// Serial reference vs OpenMP paths for the two parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hgopo/hg_modes.hpp"
#include "hgopo/langevin.hpp"
#include "hgopo/quadrature.hpp"

namespace {

using hgopo::Execution;

void BM_PlaneQuadrature(benchmark::State& state) {
  const auto exec = static_cast<Execution>(state.range(0));
  const int points = static_cast<int>(state.range(1));
  const hgopo::HGMode pump(4, 2, 1.0 / std::sqrt(2.0));
  const hgopo::HGMode mode(3, 1, 1.0);
  const auto f = [&](double x, double y) {
    const double u = mode.amplitude(x, y);
    return pump.amplitude(x, y) * u * u;
  };
  for (auto _ : state) benchmark::DoNotOptimize(hgopo::integrate_plane(f, 2.0, points, exec));
  state.SetLabel(exec == Execution::serial ? "serial" : "parallel");
}

void BM_LangevinTrajectories(benchmark::State& state) {
  const auto exec = static_cast<Execution>(state.range(0));
  hgopo::SimConfig cfg;
  cfg.params.mu = 0.0;
  cfg.pump_ratio = 0.49;
  cfg.n_trajectories = static_cast<int>(state.range(1));
  cfg.duration = 2 * cfg.segment_lifetimes * cfg.params.lifetime();
  const std::vector<double> omegas{0.0, 0.18, 1.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(hgopo::simulate_spectra(cfg, omegas, exec));
  state.SetLabel(exec == Execution::serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_PlaneQuadrature)
    ->ArgsProduct({{static_cast<int>(Execution::serial), static_cast<int>(Execution::parallel)}, {64, 256, 512}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LangevinTrajectories)
    ->ArgsProduct({{static_cast<int>(Execution::serial), static_cast<int>(Execution::parallel)}, {4, 16}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
