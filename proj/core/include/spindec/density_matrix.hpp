#pragma once

// Qutrit density matrices in the (|T+>, |T0>, |T->) basis and the row-major
// vectorization used by the 9x9 generator:
//   index(mu,nu) = 3*mu + nu   with mu,nu in {0:+, 1:0, 2:-}
// so populations sit at 0, 4, 8.

#include <Eigen/Dense>

#include "spindec/spin_ops.hpp"

namespace spindec {

using Vector9d = Eigen::Matrix<double, 9, 1>;
using Vector9cd = Eigen::Matrix<std::complex<double>, 9, 1>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;

inline constexpr int vec_index(int mu, int nu) { return 3 * mu + nu; }

inline Vector9cd vectorize(const Matrix3cd& rho) {
  Vector9cd v;
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) v(vec_index(mu, nu)) = rho(mu, nu);
  return v;
}

inline Matrix3cd unvectorize(const Vector9cd& v) {
  Matrix3cd rho;
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) rho(mu, nu) = v(vec_index(mu, nu));
  return rho;
}

/// Diagnostics for the defining density-matrix invariants.
struct DensityCheck {
  double hermiticity_error = 0.0;  ///< max |rho - rho^dag| entry
  double trace_error = 0.0;        ///< |tr rho - 1|
  double min_eigenvalue = 0.0;     ///< smallest eigenvalue of (rho+rho^dag)/2
  bool ok(double tol = 1e-12) const {
    return hermiticity_error <= tol && trace_error <= tol &&
           min_eigenvalue >= -tol;
  }
};

DensityCheck check_density(const Matrix3cd& rho);

/// Diagonal density matrix from populations (must be nonnegative, sum 1).
Matrix3cd density_from_populations(const Eigen::Vector3d& pops, double tol = 1e-9);

/// Pure-state density matrix |psi><psi| / <psi|psi>.
Matrix3cd density_from_state(const Eigen::Vector3cd& psi);

inline Eigen::Vector3d populations(const Matrix3cd& rho) {
  return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real()};
}

}  // namespace spindec
