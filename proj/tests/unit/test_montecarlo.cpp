#include <doctest.h>

#include <cmath>
#include <spindec/constants.hpp>
#include <spindec/geometry.hpp>
#include <spindec/mc_field.hpp>
#include <spindec/mc_spin.hpp>
#include <spindec/processes.hpp>
#include <spindec/series_io.hpp>
#include <spindec/signal.hpp>
#include <spindec/sweeps.hpp>

using namespace spindec;
namespace cst = constants;

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// placement-averaged sampled variance and its standard error
struct EnsembleStats {
  Eigen::Vector3d mean;
  Eigen::Vector3d sem;
};

EnsembleStats averaged_ensemble_variance(EnsembleConfig cfg, int placements,
                                         double dt, int n_samples) {
  std::vector<Eigen::Vector3d> vars;
  for (int p = 0; p < placements; ++p) {
    cfg.stream = static_cast<std::uint64_t>(p);
    const auto ens = FluctuatorEnsemble::create(cfg);
    vars.push_back(series_variance3(simulate_field_series(ens, dt, n_samples)));
  }
  EnsembleStats st;
  st.mean = Eigen::Vector3d::Zero();
  for (const auto& v : vars) st.mean += v;
  st.mean /= static_cast<double>(placements);
  Eigen::Vector3d var = Eigen::Vector3d::Zero();
  for (const auto& v : vars) var += (v - st.mean).cwiseAbs2();
  st.sem = (var / static_cast<double>(placements * (placements - 1))).cwiseSqrt();
  return st;
}

}  // namespace

TEST_CASE("surface position sampling: determinism, count statistics, uniformity") {
  const auto a = sample_surface_positions(1e14, 1e-6, 42);
  const auto b = sample_surface_positions(1e14, 1e-6, 42);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  const auto c = sample_surface_positions(1e14, 1e-6, 43);
  CHECK(a.size() != c.size());  // different seed, different Poisson draw (almost surely)

  CHECK(sample_surface_positions(0.0, 1e-6, 1).empty());

  // mean count across seeds within 3 sigma of n L^2 = 100
  double total = 0.0;
  const int trials = 1000;
  for (int s = 0; s < trials; ++s)
    total += static_cast<double>(sample_surface_positions(1e14, 1e-6, s).size());
  const double mean = total / trials;
  const double sem = std::sqrt(100.0 / trials);
  CHECK(std::abs(mean - 100.0) < 3.0 * sem);

  // chi-squared uniformity on a 10x10 grid at the 1% level
  const auto pts = sample_surface_positions(5e15, 1e-6, 7);  // ~5000 points
  REQUIRE(pts.size() > 3000);
  int grid[10][10] = {};
  for (const auto& p : pts) {
    int ix = static_cast<int>((p.x() / 1e-6 + 0.5) * 10.0);
    int iy = static_cast<int>((p.y() / 1e-6 + 0.5) * 10.0);
    ix = std::clamp(ix, 0, 9);
    iy = std::clamp(iy, 0, 9);
    ++grid[ix][iy];
  }
  const double expect = static_cast<double>(pts.size()) / 100.0;
  double chi2 = 0.0;
  for (auto& row : grid)
    for (int cnt : row) chi2 += (cnt - expect) * (cnt - expect) / expect;
  CHECK(chi2 < 134.642);  // 1% critical value, 99 dof
}

TEST_CASE("single static charge reproduces the Coulomb field") {
  EnsembleConfig cfg;
  cfg.kind = FluctuatorKind::point_charge;
  cfg.n_areal = 0.0;
  cfg.L = 1e-6;
  cfg.z_def = 5e-9;
  cfg.theta = 0.3;
  cfg.tau = 1e6;  // effectively frozen
  cfg.epsilon_r = 5.7;
  cfg.seed = 5;

  FluctuatorEnsemble ens;
  ens.cfg = cfg;
  ens.positions = {{3e-9, -4e-9}};

  const TimeSeries ts = simulate_field_series(ens, 1e-9, 16);
  const Eigen::Vector3d R =
      surface_to_defect_displacement({cfg.theta}, 3e-9, -4e-9, cfg.z_def);
  const double k =
      cst::elementary_charge * coulomb_factor(cfg.epsilon_r, std::nullopt);
  const Eigen::Vector3d coulomb = k * R / std::pow(R.norm(), 3);

  for (const auto& s : ts.samples) {
    // telegraph sign is random; magnitudes must match exactly
    CHECK((s.cwiseAbs() - coulomb.cwiseAbs()).cwiseAbs().maxCoeff() <
          1e-12 * coulomb.norm());
  }
  // frozen fluctuator: series is constant
  for (const auto& s : ts.samples)
    CHECK((s - ts.samples.front()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("field series are reproducible under a fixed seed") {
  EnsembleConfig cfg;
  cfg.kind = FluctuatorKind::point_charge;
  cfg.n_areal = 1e15;
  cfg.L = 3e-7;
  cfg.z_def = 5e-9;
  cfg.tau = 1e-8;
  cfg.seed = 11;
  const auto e1 = FluctuatorEnsemble::create(cfg);
  const auto e2 = FluctuatorEnsemble::create(cfg);
  const TimeSeries t1 = simulate_field_series(e1, 1e-9, 64);
  const TimeSeries t2 = simulate_field_series(e2, 1e-9, 64);
  for (size_t i = 0; i < t1.samples.size(); ++i)
    CHECK(t1.samples[i] == t2.samples[i]);

  cfg.stream = 9;
  const auto e3 = FluctuatorEnsemble::create(cfg);
  const TimeSeries t3 = simulate_field_series(e3, 1e-9, 64);
  CHECK(t3.samples[10] != t1.samples[10]);
}

TEST_CASE("telegraph fluctuator produces a Lorentzian spectrum") {
  EnsembleConfig cfg;
  cfg.kind = FluctuatorKind::point_charge;
  cfg.n_areal = 0.0;
  cfg.L = 1e-6;
  cfg.z_def = 5e-9;
  cfg.tau = 2e-8;
  cfg.seed = 17;

  FluctuatorEnsemble ens;
  ens.cfg = cfg;
  ens.positions = {{0.0, 0.0}};

  const double dt = cfg.tau / 5.0;
  const TimeSeries ts = simulate_field_series(ens, dt, 1 << 16);
  const PsdEstimate psd = estimate_psd(ts.axis(2), dt, 1 << 12);
  const double tau_fit = fit_lorentzian_tau(psd);
  CHECK(tau_fit == doctest::Approx(cfg.tau).epsilon(0.10));
}

TEST_CASE("OU process autocorrelation decays with the configured time") {
  CounterRng rng(21);
  OrnsteinUhlenbeck ou(5.0, 2.0, rng);
  const double dt = 0.5;
  std::vector<double> x;
  x.reserve(1 << 17);
  for (int i = 0; i < (1 << 17); ++i) x.push_back(ou.step(dt, rng));

  const auto c = estimate_autocorrelation(x, 30);
  CHECK(c[0] == doctest::Approx(4.0).epsilon(0.05));

  // regression of log c(k) against lag over the first two correlation times
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = 0; k <= 20; ++k) {
    if (c[static_cast<size_t>(k)] <= 0.1 * c[0]) break;
    const double t = k * dt;
    const double l = std::log(c[static_cast<size_t>(k)]);
    sx += t;
    sy += l;
    sxx += t * t;
    sxy += t * l;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(-1.0 / slope == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("white noise has a flat spectrum and Parseval consistency holds") {
  CounterRng rng(23);
  const double dt = 1.0;
  std::vector<double> x(1 << 15);
  for (auto& v : x) v = rng.normal();

  const PsdEstimate psd = estimate_psd(x, dt, 1 << 10);
  // flat level sigma^2 dt = 1
  double mean_s = 0.0;
  for (size_t k = 1; k + 1 < psd.S.size(); ++k) mean_s += psd.S[k];
  mean_s /= static_cast<double>(psd.S.size() - 2);
  CHECK(mean_s == doctest::Approx(1.0).epsilon(0.05));

  // integral of the two-sided PSD returns the variance within 2%
  const double dw = psd.omega[1] - psd.omega[0];
  double integral = psd.S.front() + psd.S.back();
  for (size_t k = 1; k + 1 < psd.S.size(); ++k) integral += 2.0 * psd.S[k];
  integral *= dw / (2.0 * cst::pi);
  CHECK(integral == doctest::Approx(series_variance(x)).epsilon(0.02));

  CHECK_THROWS_AS(estimate_autocorrelation(x, 1 << 16), std::invalid_argument);
}

TEST_CASE("quadrature oracle matches the closed forms at large surfaces") {
  SurfacePointChargeNoise p;
  p.n_s = 1e15;
  p.z_def = 5e-9;
  p.theta = 0.4;
  p.epsilon_r = 5.7;
  p.tau_p = 1e-9;
  const Vector3d vp = variance_surface_integral(p, 1000.0 * p.z_def);
  const Vector3d ap = point_charge_variance(p);
  CHECK((vp - ap).cwiseAbs().maxCoeff() < 1e-3 * ap.maxCoeff());

  SurfaceDipoleNoise d;
  d.n_sd = 1e16;
  d.z_def = 5e-9;
  d.theta = 1.1;
  d.epsilon_r = 5.7;
  d.dipole.mean_square_d = 2.5e-19;
  d.dipole.Gamma_d = 1e9;
  const Vector3d vd = variance_surface_integral(d, 1000.0 * d.z_def);
  const Vector3d ad = dipole_variance(d);
  CHECK((vd - ad).cwiseAbs().maxCoeff() < 1e-3 * ad.maxCoeff());

  MagneticDipoleNoise m;
  m.n_sd = 5e16;
  m.z_def = 8e-9;
  m.theta = 0.9;
  m.tau = 1e-9;
  m.gamma_bath = 28e9;
  const Vector3d vm = variance_surface_integral(m, 1000.0 * m.z_def);
  const Vector3d am = magnetic_dipole_variance(m);
  CHECK((vm - am).cwiseAbs().maxCoeff() < 1e-3 * am.maxCoeff());

  ChargedMotionNoise q;
  q.n_s = 1e17;
  q.z_def = 10e-9;
  q.T = 300.0;
  q.m_star = cst::electron_mass;
  q.tau = 1e-14;
  const Vector3d vq = variance_surface_integral(q, 1000.0 * q.z_def);
  const Vector3d aq = charged_motion_variance(q);
  CHECK((vq - aq).cwiseAbs().maxCoeff() < 1e-3 * aq.maxCoeff());

  // tilt sweep: the y+z sum from the quadrature is tilt independent
  const double ref = vp.y() + vp.z();
  for (double theta : {0.0, 0.8, 1.6}) {
    auto pt = p;
    pt.theta = theta;
    const Vector3d v = variance_surface_integral(pt, 1000.0 * p.z_def);
    CHECK(v.y() + v.z() == doctest::Approx(ref).epsilon(2e-3));
  }
}

TEST_CASE("sampled ensemble variance agrees with the closed forms") {
  // L = 100 z as in the large-sheet regime; the sparser density keeps the
  // fluctuator count (and runtime) small, with the 3-sigma gate widening
  // to match the extra placement scatter
  EnsembleConfig cfg;
  cfg.kind = FluctuatorKind::point_charge;
  cfg.dynamics = DynamicsKind::telegraph;
  cfg.n_areal = 2e15;
  cfg.z_def = 25e-9;
  cfg.L = 100.0 * cfg.z_def;
  cfg.theta = 0.0;
  cfg.tau = 1e-8;
  cfg.epsilon_r = 5.7;
  cfg.seed = 31;

  SurfacePointChargeNoise p;
  p.n_s = cfg.n_areal;
  p.z_def = cfg.z_def;
  p.theta = cfg.theta;
  p.epsilon_r = cfg.epsilon_r;
  p.tau_p = cfg.tau;
  const Vector3d analytic = point_charge_variance(p);

  const auto st = averaged_ensemble_variance(cfg, 24, cfg.tau / 4.0, 1500);
  for (int a = 0; a < 3; ++a) {
    const double tol = std::max(0.05 * analytic(a), 3.0 * st.sem(a));
    CHECK(std::abs(st.mean(a) - analytic(a)) < tol);
  }

  // dipole ensemble against its closed form
  EnsembleConfig dc = cfg;
  dc.kind = FluctuatorKind::electric_dipole;
  dc.d_rms = 0.5e-9;
  dc.seed = 37;
  SurfaceDipoleNoise d;
  d.n_sd = dc.n_areal;
  d.z_def = dc.z_def;
  d.theta = dc.theta;
  d.epsilon_r = dc.epsilon_r;
  d.dipole.mean_square_d = dc.d_rms * dc.d_rms;
  d.dipole.Gamma_d = 1.0 / dc.tau;
  const Vector3d danalytic = dipole_variance(d);
  const auto dst = averaged_ensemble_variance(dc, 24, dc.tau / 4.0, 1500);
  for (int a = 0; a < 3; ++a) {
    const double tol = std::max(0.05 * danalytic(a), 3.0 * dst.sem(a));
    CHECK(std::abs(dst.mean(a) - danalytic(a)) < tol);
  }
}

TEST_CASE("depth scaling recovered from sampled ensembles") {
  const std::vector<double> depths = {3e-9, 5.5e-9, 10e-9, 17e-9, 30e-9};
  std::vector<double> vp, vd;
  for (double z : depths) {
    EnsembleConfig cfg;
    cfg.kind = FluctuatorKind::point_charge;
    cfg.n_areal = 2e16;
    cfg.z_def = z;
    cfg.L = 20.0 * z;
    cfg.tau = 1e-8;
    cfg.seed = 101;
    const auto st = averaged_ensemble_variance(cfg, 64, cfg.tau / 3.0, 600);
    vp.push_back(st.mean.sum());

    EnsembleConfig dcfg = cfg;
    dcfg.kind = FluctuatorKind::electric_dipole;
    dcfg.d_rms = 0.5e-9;
    dcfg.seed = 103;
    const auto dst = averaged_ensemble_variance(dcfg, 64, dcfg.tau / 3.0, 600);
    vd.push_back(dst.mean.sum());
  }
  CHECK(loglog_slope(depths, vp) == doctest::Approx(-2.0).epsilon(0.05));
  CHECK(loglog_slope(depths, vd) == doctest::Approx(-4.0).epsilon(0.025));
}

TEST_CASE("time series round trip through the binary dump") {
  EnsembleConfig cfg;
  cfg.kind = FluctuatorKind::point_charge;
  cfg.n_areal = 1e15;
  cfg.L = 3e-7;
  cfg.z_def = 5e-9;
  cfg.tau = 1e-8;
  cfg.seed = 3;
  const auto ens = FluctuatorEnsemble::create(cfg);
  const TimeSeries ts = simulate_field_series(ens, 1e-9, 128);

  const std::string path = "series_roundtrip.bin";
  write_time_series(path, ts);
  const TimeSeries rt = read_time_series(path);
  REQUIRE(rt.samples.size() == ts.samples.size());
  CHECK(rt.dt == ts.dt);
  for (size_t i = 0; i < ts.samples.size(); ++i)
    CHECK(rt.samples[i] == ts.samples[i]);
  std::remove(path.c_str());
}

TEST_CASE("stochastic evolution: zero noise is unitary, small ensembles rejected") {
  StochasticRunConfig cfg;
  cfg.params = SpinCenterParams::nv();
  cfg.params.D = 5e6;  // scaled-down splitting keeps the integration cheap
  cfg.params.gamma_par = 1e6;
  cfg.params.gamma_perp = 1e6;
  cfg.Bz = 1.0;
  cfg.realizations = 12;
  cfg.dt = 1e-9;
  cfg.seed = 7;

  Eigen::Vector3cd psi;
  psi << complexd(1, 0) / std::sqrt(2.0), complexd(1, 0) / std::sqrt(2.0),
      complexd(0, 0);
  const Matrix3cd rho0 = density_from_state(psi);

  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(2e-6 * i / 10.0);
  const StochasticAverage avg = stochastic_average_evolution(cfg, rho0, grid);

  for (size_t g = 0; g < grid.size(); ++g) {
    CHECK((populations(avg.rho_mean[g]) - populations(rho0)).cwiseAbs().maxCoeff() <
          1e-10);
    // free evolution only rotates the coherence phase; RK4 norm drift is tiny
    CHECK(avg.coh_p0_abs[g] == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(std::abs(avg.rho_mean[g].trace() - complexd(1, 0)) < 1e-12);
  }

  cfg.realizations = 5;
  CHECK_THROWS_AS(stochastic_average_evolution(cfg, rho0, grid), std::invalid_argument);
}

TEST_CASE("stochastic evolution converges to the dissipative solution as tau_c shrinks") {
  // same rate target at two correlation times; the shorter one must sit
  // closer to the analytic populations
  const double target_gap = 4e6;  // level splitting scale, Hz
  StochasticRunConfig base;
  base.params = SpinCenterParams::nv();
  base.params.D = target_gap;
  base.params.gamma_par = 1e6;
  base.params.gamma_perp = 0.0;
  base.params.d_par = 0.0;
  base.params.d_prime = 0.0;
  base.params.d_perp = 0.17;
  base.Bz = 0.5;  // gamma_par Bz = 5e5 Hz
  base.realizations = 160;
  base.seed = 19;
  base.threads = 2;

  const Matrix3cd rho0 = density_from_populations({0.0, 0.0, 1.0});

  auto run_deviation = [&](double tau_c, double sigma) {
    StochasticRunConfig cfg = base;
    cfg.noise.tau_E = tau_c;
    cfg.noise.sigma_E = Eigen::Vector3d(sigma, sigma, 0.0);
    cfg.dt = std::min(tau_c / 25.0, 4e-9);

    const RateSet rates = rates_from_spectra(
        [&](double w) { return cfg.noise.electric_spectrum(w); },
        [&](double w) { return cfg.noise.magnetic_spectrum(w); },
        transition_frequencies(cfg.params, cfg.Bz), cfg.params);

    std::vector<double> grid;
    const double horizon = 1.2 / relaxation_rates(rates).inv_T1_plus();
    for (int i = 0; i <= 8; ++i) grid.push_back(horizon * i / 8.0);
    const StochasticAverage avg = stochastic_average_evolution(cfg, rho0, grid);
    const Eigen::Matrix3Xd analytic =
        population_dynamics(rates, Eigen::Vector3d(0.0, 0.0, 1.0), grid);

    double dev = 0.0;
    for (size_t g = 1; g < grid.size(); ++g)
      dev += (populations(avg.rho_mean[g]) -
              analytic.col(static_cast<Eigen::Index>(g)))
                 .cwiseAbs()
                 .sum();
    return dev / static_cast<double>(grid.size() - 1);
  };

  // sigma^2 tau held fixed so both runs target the same rates; the longer
  // correlation time sits deeper in the non-Markovian regime
  const double dev_long = run_deviation(6.4e-8, 4.5e6);
  const double dev_short = run_deviation(1.6e-8, 9.0e6);
  CHECK(dev_short < dev_long);
}
