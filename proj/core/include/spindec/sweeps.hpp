#pragma once

// Parameter-sweep pipelines behind the command line tool: channel rates and
// relaxation/dephasing times against the axial field, per-source field
// amplitudes against depth, and analytic-vs-numeric population dynamics.

#include <optional>
#include <string>

#include "spindec/integrator.hpp"
#include "spindec/noise.hpp"

namespace spindec {

std::vector<double> linspace(double a, double b, int n);
/// n points log-uniform between a and b (both > 0).
std::vector<double> logspace(double a, double b, int n);

struct RateSweepPoint {
  double Bz = 0.0;
  RateSet rates;
  double inv_T1_plus = 0.0;
  double inv_T1_minus = 0.0;
  DephasingTimes dephasing;
  bool valid = true;  ///< false inside the degeneracy guard band
};

struct RatesSweepOptions {
  /// Tie each magnetic-moment source's spectral peak to the sweep variable:
  /// delta_omega_mu = 2 pi gamma_bath Bz.
  bool track_bath_splitting = false;
  double degeneracy_guard = default_degeneracy_guard;
  int threads = 1;
};

std::vector<RateSweepPoint> rates_field_sweep(const SpinCenterParams& params,
                                              const NoiseStack& stack,
                                              const std::vector<double>& Bz_grid,
                                              const RatesSweepOptions& opt = {});

struct DepthSweepPoint {
  double z = 0.0;
  std::vector<double> field_rms;  ///< per source, sqrt of summed axis variance
  double bulk_rms = 0.0;
};

struct DepthSweepResult {
  std::vector<std::string> source_labels;
  std::vector<DepthSweepPoint> points;
  std::optional<double> z_opt_point;   ///< first point-charge source vs bulk
  std::optional<double> z_opt_dipole;  ///< first dipole source vs bulk
};

DepthSweepResult noise_depth_sweep(const NoiseStack& stack, const BulkNearNoise& bulk,
                                   const std::vector<double>& z_grid);

struct PopulationsRun {
  std::vector<double> t;
  Eigen::Matrix3Xd analytic;
  Eigen::Matrix3Xd numeric;
  PopulationSolution solution;
};

PopulationsRun populations_run(const RateSet& rates, const Eigen::Vector3d& rho0,
                               const std::vector<double>& t_grid,
                               const StepControl& ctrl = {});

}  // namespace spindec
