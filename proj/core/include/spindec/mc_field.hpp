#pragma once

// Brute-force field oracles: finite ensembles of surface fluctuators
// generating field time series at the defect, and deterministic quadrature
// of the same surface integrals the closed forms solve.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "spindec/noise.hpp"
#include "spindec/rng.hpp"

namespace spindec {

enum class FluctuatorKind { point_charge, electric_dipole, magnetic_moment, drift_current };
enum class DynamicsKind { telegraph, ornstein_uhlenbeck };

struct EnsembleConfig {
  FluctuatorKind kind = FluctuatorKind::point_charge;
  DynamicsKind dynamics = DynamicsKind::telegraph;
  double n_areal = 0.0;    ///< fluctuator density [1/m^2]
  double L = 0.0;          ///< simulated surface side [m]
  double z_def = 0.0;      ///< defect depth [m]
  double theta = 0.0;      ///< tilt [rad]
  double tau = 0.0;        ///< fluctuator correlation time [s]
  double epsilon_r = 5.7;  ///< host permittivity (electric kinds)
  double d_rms = 0.0;      ///< rms dipole length [m] (electric_dipole)
  double gamma_bath = 0.0; ///< bath gyromagnetic ratio [Hz/T] (magnetic_moment)
  double T = 0.0;          ///< temperature [K] (drift_current)
  double m_star = 0.0;     ///< carrier mass [kg] (drift_current)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Uniformly placed surface points; the count is Poisson with mean n*L^2.
std::vector<Eigen::Vector2d> sample_surface_positions(double n_areal, double L,
                                                      std::uint64_t seed,
                                                      std::uint64_t stream = 0);

struct FluctuatorEnsemble {
  EnsembleConfig cfg;
  std::vector<Eigen::Vector2d> positions;  ///< surface coordinates (x', y') [m]

  static FluctuatorEnsemble create(const EnsembleConfig& cfg);
};

/// Uniformly sampled per-axis field series in the defect frame
/// (V/m for electric kinds, T for magnetic kinds).
struct TimeSeries {
  double dt = 0.0;
  std::vector<Eigen::Vector3d> samples;

  std::vector<double> axis(int i) const;
};

TimeSeries simulate_field_series(const FluctuatorEnsemble& ens, double dt, int n_samples);

/// Per-axis sample variance around the sample mean.
Eigen::Vector3d series_variance3(const TimeSeries& ts);

// Deterministic per-axis variance over the finite L x L surface (adaptive
// 2D quadrature of the exact integrands).  Converges to the closed forms as
// L -> infinity.
Eigen::Vector3d variance_surface_integral(const SurfacePointChargeNoise& c, double L);
Eigen::Vector3d variance_surface_integral(const SurfaceDipoleNoise& c, double L);
Eigen::Vector3d variance_surface_integral(const MagneticDipoleNoise& c, double L);
Eigen::Vector3d variance_surface_integral(const ChargedMotionNoise& c, double L);

}  // namespace spindec
