#include "spindec/sweeps.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spindec/constants.hpp"

namespace spindec {

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need n >= 2");
  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<size_t>(i)] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("logspace: need a, b > 0");
  if (n < 2) throw std::invalid_argument("logspace: need n >= 2");
  std::vector<double> v(static_cast<size_t>(n));
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i)
    v[static_cast<size_t>(i)] =
        std::exp(la + (lb - la) * static_cast<double>(i) / (n - 1));
  return v;
}

std::vector<RateSweepPoint> rates_field_sweep(const SpinCenterParams& params,
                                              const NoiseStack& stack,
                                              const std::vector<double>& Bz_grid,
                                              const RatesSweepOptions& opt) {
  std::vector<RateSweepPoint> out(Bz_grid.size());

  auto compute_point = [&](size_t i) {
    const double Bz = Bz_grid[i];
    NoiseStack local = stack;
    if (opt.track_bath_splitting) {
      for (auto& src : local.sources) {
        if (auto* m = std::get_if<MagneticDipoleNoise>(&src))
          m->delta_omega_mu = constants::two_pi * m->gamma_bath * Bz;
      }
    }
    const TransitionFrequencies freqs = transition_frequencies(params, Bz);
    RateSweepPoint pt;
    pt.Bz = Bz;
    pt.rates = rates_from_spectra(
        [&](double w) { return local.electric_spectrum(w); },
        [&](double w) { return local.magnetic_spectrum(w); }, freqs, params,
        opt.degeneracy_guard);
    const PopulationSolution sol = relaxation_rates(pt.rates);
    pt.inv_T1_plus = sol.inv_T1_plus();
    pt.inv_T1_minus = sol.inv_T1_minus();
    pt.dephasing = dephasing_rates(pt.rates);
    pt.valid = !pt.rates.degeneracy_warning;
    out[i] = pt;
  };

  const int n_threads = std::max(1, opt.threads);
  if (n_threads == 1) {
    for (size_t i = 0; i < Bz_grid.size(); ++i) compute_point(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < n_threads; ++w)
      pool.emplace_back([&]() {
        for (;;) {
          const size_t i = next.fetch_add(1);
          if (i >= Bz_grid.size()) return;
          compute_point(i);
        }
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

namespace {

struct SourceView {
  std::string label;
  // total field rms at the given depth
  double (*rms_at)(const NoiseSource&, double z);
};

double rms_point(const NoiseSource& s, double z) {
  SurfacePointChargeNoise c = std::get<SurfacePointChargeNoise>(s);
  c.z_def = z;
  return std::sqrt(point_charge_variance(c).sum());
}
double rms_dipole(const NoiseSource& s, double z) {
  SurfaceDipoleNoise c = std::get<SurfaceDipoleNoise>(s);
  c.z_def = z;
  return std::sqrt(dipole_variance(c).sum());
}
double rms_mag(const NoiseSource& s, double z) {
  MagneticDipoleNoise c = std::get<MagneticDipoleNoise>(s);
  c.z_def = z;
  return std::sqrt(magnetic_dipole_variance(c).sum());
}
double rms_drift(const NoiseSource& s, double z) {
  ChargedMotionNoise c = std::get<ChargedMotionNoise>(s);
  c.z_def = z;
  return std::sqrt(charged_motion_variance(c).sum());
}

SourceView view_of(const NoiseSource& s) {
  if (std::holds_alternative<SurfacePointChargeNoise>(s)) return {"point_charge", rms_point};
  if (std::holds_alternative<SurfaceDipoleNoise>(s)) return {"dipole_charge", rms_dipole};
  if (std::holds_alternative<MagneticDipoleNoise>(s)) return {"magnetic_moment", rms_mag};
  return {"charged_motion", rms_drift};
}

}  // namespace

DepthSweepResult noise_depth_sweep(const NoiseStack& stack, const BulkNearNoise& bulk,
                                   const std::vector<double>& z_grid) {
  DepthSweepResult res;
  std::vector<SourceView> views;
  for (const auto& src : stack.sources) {
    views.push_back(view_of(src));
    res.source_labels.push_back(views.back().label);
  }

  for (const auto& src : stack.sources) {
    if (!res.z_opt_point) {
      if (const auto* p = std::get_if<SurfacePointChargeNoise>(&src))
        res.z_opt_point = optimal_depth_point(p->n_s, bulk.n_v);
    }
    if (!res.z_opt_dipole) {
      if (const auto* d = std::get_if<SurfaceDipoleNoise>(&src))
        res.z_opt_dipole =
            optimal_depth_dipole(d->n_sd, std::sqrt(d->dipole.mean_square_d), bulk.n_v);
    }
  }

  const double bulk_rms = bulk.n_v > 0.0 ? bulk_near_field(bulk) : 0.0;
  res.points.reserve(z_grid.size());
  for (double z : z_grid) {
    DepthSweepPoint pt;
    pt.z = z;
    for (size_t i = 0; i < views.size(); ++i)
      pt.field_rms.push_back(views[i].rms_at(stack.sources[i], z));
    pt.bulk_rms = bulk_rms;
    res.points.push_back(std::move(pt));
  }
  return res;
}

PopulationsRun populations_run(const RateSet& rates, const Eigen::Vector3d& rho0,
                               const std::vector<double>& t_grid,
                               const StepControl& ctrl) {
  PopulationsRun run;
  run.t = t_grid;
  run.analytic = population_dynamics(rates, rho0, t_grid);
  run.solution = solve_population_modes(rates, rho0);

  const Trajectory traj =
      evolve_numeric(rates, density_from_populations(rho0), t_grid, ctrl);
  run.numeric.resize(3, static_cast<Eigen::Index>(t_grid.size()));
  for (size_t k = 0; k < traj.rho.size(); ++k)
    run.numeric.col(static_cast<Eigen::Index>(k)) = populations(traj.rho[k]);
  return run;
}

}  // namespace spindec
