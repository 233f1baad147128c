#include <benchmark/benchmark.h>

#include <spindec/mc_field.hpp>
#include <spindec/signal.hpp>

using namespace spindec;

static void BM_FieldSeries(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.kind = FluctuatorKind::point_charge;
  cfg.n_areal = 2e16;
  cfg.z_def = 25e-9;
  cfg.L = 100.0 * cfg.z_def;
  cfg.tau = 1e-8;
  cfg.seed = 1;
  const auto ens = FluctuatorEnsemble::create(cfg);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_field_series(ens, cfg.tau / 4.0, samples));
  state.SetItemsProcessed(state.iterations() * samples *
                          static_cast<long>(ens.positions.size()));
}
BENCHMARK(BM_FieldSeries)->Arg(256)->Arg(1024);

static void BM_SurfaceQuadrature(benchmark::State& state) {
  SurfacePointChargeNoise p;
  p.n_s = 1e15;
  p.z_def = 5e-9;
  p.theta = 0.4;
  p.epsilon_r = 5.7;
  p.tau_p = 1e-9;
  for (auto _ : state)
    benchmark::DoNotOptimize(variance_surface_integral(p, 1000.0 * p.z_def));
}
BENCHMARK(BM_SurfaceQuadrature);

static void BM_WelchPsd(benchmark::State& state) {
  CounterRng rng(3);
  std::vector<double> x(1 << 15);
  for (auto& v : x) v = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_psd(x, 1.0, 1 << 11));
}
BENCHMARK(BM_WelchPsd);
