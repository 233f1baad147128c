#pragma once

// Numerical propagation of the dissipative generator, used as an independent
// check of the analytic population and dephasing solutions.

#include <vector>

#include "spindec/lindblad.hpp"

namespace spindec {

struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// 0 = adaptive embedded Runge-Kutta; > 0 = classic RK4 with this step [s]
  /// (reproducible output for byte-stable CSV files).
  double fixed_step = 0.0;
  long max_steps = 50'000'000;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Matrix3cd> rho;
};

/// Integrate d rho/dt = L[rho] through the points of t_grid (strictly
/// increasing).  Throws std::runtime_error on step-control failure.
Trajectory evolve_numeric(const RateSet& rates, const Matrix3cd& rho0,
                          const std::vector<double>& t_grid,
                          const StepControl& ctrl = {});

/// Same, with a caller-supplied generator (e.g. for cross-checks).
Trajectory evolve_numeric(const Liouvillian9& gen, const Matrix3cd& rho0,
                          const std::vector<double>& t_grid,
                          const StepControl& ctrl = {});

}  // namespace spindec
