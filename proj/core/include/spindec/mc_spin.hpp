#pragma once

// Ensemble averaging of the exact (von Neumann) evolution under sampled
// classical field noise.  Independent of the dissipative generator; used to
// validate the analytic population and dephasing solutions in the
// weak-coupling, short-correlation-time regime.

#include <cstdint>
#include <vector>

#include "spindec/density_matrix.hpp"
#include "spindec/spin_center.hpp"

namespace spindec {

/// Per-axis OU noise on the electric and magnetic fields (defect frame).
/// A zero sigma disables that axis.
struct OuFieldNoise {
  Eigen::Vector3d sigma_E = Eigen::Vector3d::Zero();  ///< field std dev [V/m]
  double tau_E = 0.0;                                 ///< correlation time [s]
  Eigen::Vector3d sigma_B = Eigen::Vector3d::Zero();  ///< field std dev [T]
  double tau_B = 0.0;

  /// Analytic per-axis spectra of this noise (for building rate sets).
  Eigen::Vector3d electric_spectrum(double omega) const;
  Eigen::Vector3d magnetic_spectrum(double omega) const;
};

struct StochasticRunConfig {
  SpinCenterParams params;
  double Bz = 0.0;  ///< static axial field [T]
  OuFieldNoise noise;
  int realizations = 0;
  double dt = 0.0;  ///< integrator step [s]
  std::uint64_t seed = 0;
  int threads = 1;
};

struct StochasticAverage {
  std::vector<double> t;
  std::vector<Matrix3cd> rho_mean;           ///< ensemble-averaged state
  std::vector<Eigen::Vector3d> pop_sem;      ///< standard error of each population
  std::vector<double> coh_p0_abs;            ///< |<rho_{+0}>|
  std::vector<double> coh_p0_sem;            ///< standard error of that magnitude
};

/// Average M von-Neumann trajectories of rho0 sampled at t_grid.
/// Fewer than 10 realizations are rejected.  The reduction over realizations
/// is performed in a fixed order, so results do not depend on `threads`.
StochasticAverage stochastic_average_evolution(const StochasticRunConfig& cfg,
                                               const Matrix3cd& rho0,
                                               const std::vector<double>& t_grid);

}  // namespace spindec
