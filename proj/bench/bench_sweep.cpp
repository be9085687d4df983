// Serial reference path vs OpenMP sweep kernels on the same grids.
// Worker count comes from DOTCAVITY_WORKERS (OpenMP default otherwise).
//
//   DOTCAVITY_WORKERS=4 ./bench_sweep --benchmark_counters_tabular=true

#include <benchmark/benchmark.h>

#include <cmath>

#include "dotcavity/constants.hpp"
#include "dotcavity/sweep.hpp"

using namespace dotcavity;

namespace {

MaserConfig base_maser() {
  MaserConfig cfg;
  const double omega = 30e9;
  cfg.dot = {omega / std::sqrt(8.0), 2.0 * omega / std::sqrt(8.0)};
  cfg.pump_source = 1e9;
  cfg.pump_drain = 1e9;
  cfg.relaxation = 1e8;
  cfg.dephasing = 1e9;
  cfg.photon_loss = 1e6;
  cfg.g0 = 30e6;
  return cfg;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state, std::size_t points) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
  state.counters["workers"] = state.range(0) == 0 ? 1 : worker_count();
  state.counters["points/s"] = benchmark::Counter(
      static_cast<double>(points), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_ThresholdGrid(benchmark::State& state) {
  const auto g0s = sweep_points(1e6, 1e9, 24, true);
  const auto kappas = sweep_points(1e4, 1e8, 24, true);
  const MaserConfig base = base_maser();
  const ThresholdOptions opt;
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold_grid(base, g0s, kappas, opt, mode(state)));
  }
  label(state, g0s.size() * kappas.size());
}

void BM_PhotonSweep(benchmark::State& state) {
  const auto gammas = sweep_points(1e8, 1e12, 400, true);
  const MaserConfig base = base_maser();
  for (auto _ : state) {
    benchmark::DoNotOptimize(photon_sweep(base, gammas, mode(state)));
  }
  label(state, gammas.size());
}

void BM_SuppressionSweep(benchmark::State& state) {
  const auto qualities = sweep_points(1e2, 1e5, 32, true);
  const PulseEnvelope env = PulseEnvelope::gaussian(1e-9);
  const QuadratureOptions opt;
  for (auto _ : state) {
    benchmark::DoNotOptimize(suppression_sweep(env, kTwoPi * 5e9, qualities,
                                               opt, mode(state)));
  }
  label(state, qualities.size());
}

void BM_OracleGrid(benchmark::State& state) {
  std::vector<MaserConfig> configs;
  for (double gamma : {5e6, 10e6, 20e6, 40e6}) {
    MaserConfig cfg = base_maser();
    cfg.dot = {1.0, 2.0};
    cfg.pump_source = gamma;
    cfg.pump_drain = gamma;
    cfg.relaxation = 1e6;
    cfg.dephasing = 10e6;
    cfg.photon_loss = 0.5e6;
    cfg.g0 = 1e6 * std::sqrt(8.0);
    configs.push_back(cfg);
  }
  HilbertSpec spec;
  spec.n_fock = 24;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_grid(configs, spec, mode(state)));
  }
  label(state, configs.size());
}

}  // namespace

BENCHMARK(BM_ThresholdGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PhotonSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SuppressionSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
