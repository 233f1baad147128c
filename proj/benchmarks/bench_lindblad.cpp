#include <benchmark/benchmark.h>

#include <spindec/integrator.hpp>
#include <spindec/rng.hpp>

using namespace spindec;

namespace {

RateSet sample_rates() {
  CounterRng rng(1);
  RateSet r;
  r.gamma_dperp_pm = 2e4 * rng.uniform01();
  r.gamma_dprime_p0 = 1e4 * rng.uniform01();
  r.gamma_dprime_m0 = 1e4 * rng.uniform01();
  r.gamma_dpar_0 = 1e3 * rng.uniform01();
  r.gamma_gperp_p0 = 1e3 * rng.uniform01();
  r.gamma_gperp_m0 = 1e3 * rng.uniform01();
  r.gamma_gpar_0 = 1e3 * rng.uniform01();
  return r;
}

}  // namespace

static void BM_BuildLiouvillian(benchmark::State& state) {
  const RateSet r = sample_rates();
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(r));
}
BENCHMARK(BM_BuildLiouvillian);

static void BM_AssembleFromOperators(benchmark::State& state) {
  const RateSet r = sample_rates();
  const auto ops = lindblad_operators(r);
  for (auto _ : state) benchmark::DoNotOptimize(liouvillian_from_operators(ops));
}
BENCHMARK(BM_AssembleFromOperators);

static void BM_RelaxationRates(benchmark::State& state) {
  const RateSet r = sample_rates();
  for (auto _ : state) benchmark::DoNotOptimize(relaxation_rates(r));
}
BENCHMARK(BM_RelaxationRates);

static void BM_EvolveNumeric(benchmark::State& state) {
  const RateSet r = sample_rates();
  const Matrix3cd rho0 = density_from_populations({0.0, 0.0, 1.0});
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(1e-4 * i / 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_numeric(r, rho0, grid));
}
BENCHMARK(BM_EvolveNumeric);

static void BM_EvolveNumericFixedStep(benchmark::State& state) {
  const RateSet r = sample_rates();
  const Matrix3cd rho0 = density_from_populations({0.0, 0.0, 1.0});
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(1e-4 * i / 20.0);
  StepControl ctrl;
  ctrl.fixed_step = 1e-7;
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_numeric(r, rho0, grid, ctrl));
}
BENCHMARK(BM_EvolveNumericFixedStep);

BENCHMARK_MAIN();
