#include <benchmark/benchmark.h>

#include <spindec/noise.hpp>
#include <spindec/sweeps.hpp>

using namespace spindec;

namespace {

NoiseStack make_stack() {
  SurfacePointChargeNoise p;
  p.n_s = 1e15;
  p.z_def = 5e-9;
  p.epsilon_r = 5.7;
  p.tau_p = 5e-9;
  SurfaceDipoleNoise d;
  d.n_sd = 1e16;
  d.z_def = 5e-9;
  d.epsilon_r = 5.7;
  d.dipole.mean_square_d = 2.5e-19;
  d.dipole.Gamma_d = 1e9;
  MagneticDipoleNoise m;
  m.n_sd = 5e16;
  m.z_def = 5e-9;
  m.tau = 0.24e-9;
  m.gamma_bath = 28e9;
  NoiseStack s;
  s.sources.push_back(p);
  s.sources.push_back(d);
  s.sources.push_back(m);
  return s;
}

}  // namespace

static void BM_StackSpectrum(benchmark::State& state) {
  const NoiseStack stack = make_stack();
  double w = 1e9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stack.electric_spectrum(w));
    benchmark::DoNotOptimize(stack.magnetic_spectrum(w));
    w += 1.0;
  }
}
BENCHMARK(BM_StackSpectrum);

static void BM_RatesFieldSweep(benchmark::State& state) {
  const NoiseStack stack = make_stack();
  const auto params = SpinCenterParams::nv();
  const auto grid = linspace(0.0, 0.2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(rates_field_sweep(params, stack, grid));
}
BENCHMARK(BM_RatesFieldSweep)->Arg(101)->Arg(401);

static void BM_OneOverFSpectrum(benchmark::State& state) {
  ActivatedEnergyBand band;
  band.E1 = 0.05 * 1.602176634e-19;
  band.E2 = 0.15 * 1.602176634e-19;
  band.tau_0 = 1e-12;
  band.T = 100.0;
  double w = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(one_over_f_spectrum(band, w));
    w *= 1.0000001;
  }
}
BENCHMARK(BM_OneOverFSpectrum);
