#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <spindec/constants.hpp>
#include <spindec/sweeps.hpp>

using namespace spindec;
namespace cst = constants;

namespace {

NoiseStack point_charge_stack() {
  SurfacePointChargeNoise p;
  p.n_s = 1e15;  // 1e11 cm^-2
  p.z_def = 5e-9;
  p.epsilon_r = 5.7;
  p.tau_p = 5e-9;
  NoiseStack s;
  s.sources.push_back(p);
  return s;
}

size_t argmax(const std::vector<double>& v) {
  return static_cast<size_t>(
      std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

}  // namespace

TEST_CASE("grid helpers") {
  const auto lin = linspace(0.0, 1.0, 5);
  CHECK(lin.size() == 5);
  CHECK(lin[0] == 0.0);
  CHECK(lin[4] == 1.0);
  CHECK(lin[2] == doctest::Approx(0.5));

  const auto lg = logspace(1.0, 100.0, 3);
  CHECK(lg[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_THROWS_AS(logspace(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("rates sweep: lower-gap channel peaks at the crossing field") {
  const auto params = SpinCenterParams::nv();
  const auto grid = linspace(0.0, 0.2, 401);
  const auto rows = rates_field_sweep(params, point_charge_stack(), grid);

  std::vector<double> dprime_m0;
  for (const auto& r : rows) dprime_m0.push_back(r.rates.gamma_dprime_m0);
  const size_t peak = argmax(dprime_m0);
  CHECK(grid[peak] == doctest::Approx(0.105).epsilon(1e-12));

  // at zero field the two cross-subspace channels coincide
  CHECK(rows[0].rates.gamma_dprime_p0 ==
        doctest::Approx(rows[0].rates.gamma_dprime_m0).epsilon(1e-14));
  CHECK_FALSE(rows[0].valid);  // outer gap closed at Bz = 0
  CHECK_FALSE(rows[peak].valid);  // lower gap closed at the crossing

  // away from both degeneracies the guard stays quiet
  const size_t mid = 100;  // 0.05 T
  CHECK(rows[mid].valid);

  // the upper-gap channel only decreases with field
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].rates.gamma_dprime_p0 <= rows[i - 1].rates.gamma_dprime_p0 + 1e-18);

  // threaded sweep gives identical rows
  RatesSweepOptions opt;
  opt.threads = 2;
  const auto rows2 = rates_field_sweep(params, point_charge_stack(), grid, opt);
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows2[i].rates.gamma_dprime_m0 == rows[i].rates.gamma_dprime_m0);
    CHECK(rows2[i].inv_T1_plus == rows[i].inv_T1_plus);
  }
}

TEST_CASE("rates sweep: bath-tracking moment noise peaks where the gap matches") {
  const auto params = SpinCenterParams::nv();
  MagneticDipoleNoise m;
  m.n_sd = 5e16;  // 5e12 cm^-2
  m.z_def = 5e-9;
  m.tau = 0.24e-9;
  m.gamma_bath = 28e9;
  NoiseStack stack;
  stack.sources.push_back(m);

  RatesSweepOptions opt;
  opt.track_bath_splitting = true;
  const auto grid = linspace(0.0, 0.2, 401);
  const auto rows = rates_field_sweep(params, stack, grid, opt);

  std::vector<double> invT1p;
  for (const auto& r : rows) invT1p.push_back(r.inv_T1_plus);
  const size_t peak = argmax(invT1p);
  // omega_m0 = delta_omega_mu at Bz = D / (gamma_par + gamma_bath)
  const double expect = params.D / (params.gamma_par + m.gamma_bath);
  CHECK(grid[peak] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("depth sweep: slopes, bulk level, and crossing markers") {
  NoiseStack stack = point_charge_stack();
  SurfaceDipoleNoise d;
  d.n_sd = 1e16;
  d.z_def = 5e-9;
  d.epsilon_r = 5.7;
  d.dipole.mean_square_d = 2.5e-19;
  d.dipole.Gamma_d = 1e9;
  stack.sources.push_back(d);

  BulkNearNoise bulk;
  bulk.epsilon_r = 5.7;
  bulk.n_v = 1e21;

  const auto grid = logspace(2e-9, 5e-6, 160);
  const DepthSweepResult res = noise_depth_sweep(stack, bulk, grid);
  REQUIRE(res.source_labels.size() == 2);
  CHECK(res.source_labels[0] == "point_charge");
  CHECK(res.source_labels[1] == "dipole_charge");

  // field amplitude slopes: -1 for the point sheet, -2 for the dipole sheet
  const double lp = std::log(res.points.back().field_rms[0] /
                             res.points.front().field_rms[0]) /
                    std::log(grid.back() / grid.front());
  const double ld = std::log(res.points.back().field_rms[1] /
                             res.points.front().field_rms[1]) /
                    std::log(grid.back() / grid.front());
  CHECK(lp == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(ld == doctest::Approx(-2.0).epsilon(1e-10));

  // bulk level constant
  CHECK(res.points.front().bulk_rms == res.points.back().bulk_rms);

  // the reported optimal depth matches the grid crossing of the point column
  REQUIRE(res.z_opt_point.has_value());
  size_t crossing = 0;
  for (size_t i = 0; i + 1 < res.points.size(); ++i) {
    if ((res.points[i].field_rms[0] >= res.points[i].bulk_rms) &&
        (res.points[i + 1].field_rms[0] < res.points[i + 1].bulk_rms)) {
      crossing = i;
      break;
    }
  }
  REQUIRE(crossing > 0);
  CHECK(*res.z_opt_point >= grid[crossing] * 0.99);
  CHECK(*res.z_opt_point <= grid[crossing + 1] * 1.01);

  REQUIRE(res.z_opt_dipole.has_value());
  size_t dcross = 0;
  for (size_t i = 0; i + 1 < res.points.size(); ++i) {
    if ((res.points[i].field_rms[1] >= res.points[i].bulk_rms) &&
        (res.points[i + 1].field_rms[1] < res.points[i + 1].bulk_rms)) {
      dcross = i;
      break;
    }
  }
  REQUIRE(dcross > 0);
  CHECK(*res.z_opt_dipole >= grid[dcross] * 0.99);
  CHECK(*res.z_opt_dipole <= grid[dcross + 1] * 1.01);
}

TEST_CASE("populations run: analytic and numeric columns agree") {
  RateSet r;
  r.gamma_dperp_pm = 20e3;
  r.gamma_dprime_p0 = 0.2e3;
  r.gamma_dprime_m0 = 0.2e3;

  const auto ts = linspace(0.0, 2e-3, 41);
  const PopulationsRun run = populations_run(r, {0.0, 0.0, 1.0}, ts);
  CHECK((run.analytic - run.numeric).cwiseAbs().maxCoeff() < 1e-8);
  // equal-gap branch: 2 gamma + Omega with Omega = 100 /s
  CHECK(run.solution.inv_T1_plus() == doctest::Approx(40.1e3).epsilon(1e-12));

  // fixed-step mode reproduces byte-identical numerics
  StepControl ctrl;
  ctrl.fixed_step = 1e-6;
  const PopulationsRun a = populations_run(r, {0.0, 0.0, 1.0}, ts, ctrl);
  const PopulationsRun b = populations_run(r, {0.0, 0.0, 1.0}, ts, ctrl);
  CHECK((a.numeric - b.numeric).cwiseAbs().maxCoeff() == 0.0);
}
