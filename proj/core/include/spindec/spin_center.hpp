#pragma once

// Ground-state model of a C3v spin-1 defect center: coupling constants,
// field Hamiltonian and transition frequencies.

#include <Eigen/Dense>

#include "spindec/spin_ops.hpp"

namespace spindec {

/// Static coupling constants of the defect ground state.  Energies are
/// stored as frequencies (H/h, Hz); angular-frequency variants carry an
/// explicit 2*pi and only appear at the spectra/rates boundary.
struct SpinCenterParams {
  double D = 0.0;           ///< zero-field splitting [Hz]
  double gamma_par = 0.0;   ///< longitudinal gyromagnetic ratio [Hz/T]
  double gamma_perp = 0.0;  ///< transverse gyromagnetic ratio [Hz/T]
  double d_par = 0.0;       ///< longitudinal electric dipole constant [Hz m/V]
  double d_perp = 0.0;      ///< transverse electric dipole constant [Hz m/V]
  double d_prime = 0.0;     ///< cross-subspace electric dipole constant [Hz m/V]

  /// NV-center-like defaults.  D is chosen so that the |T->,|T0> crossing
  /// sits at Bz = 0.105 T for gamma_par = 28 GHz/T.
  static SpinCenterParams nv();
};

/// Throws std::invalid_argument when a parameter violates its sign bound.
void validate(const SpinCenterParams& p);

/// Level angular frequencies and their pairwise differences [rad/s].
struct TransitionFrequencies {
  double omega_plus = 0.0;   ///< |T+> level
  double omega_minus = 0.0;  ///< |T-> level
  double omega_zero = 0.0;   ///< |T0> level, zero by convention
  double omega_p0 = 0.0;     ///< omega_plus - omega_zero
  double omega_m0 = 0.0;     ///< omega_minus - omega_zero
  double omega_pm = 0.0;     ///< omega_plus - omega_minus
};

/// Hamiltonian over h [Hz] in the (|T+>, |T0>, |T->) basis for static fields
/// E [V/m], B [T] given in the defect frame.  Hermitian by construction.
Matrix3cd hamiltonian_matrix(const SpinCenterParams& p,
                             const Eigen::Vector3d& E,
                             const Eigen::Vector3d& B);

/// Level frequencies for an axial static field Bz; omega_pm/2pi = 2*gamma_par*Bz
/// and omega_{p0,m0}/2pi = D +- gamma_par*Bz.
TransitionFrequencies transition_frequencies(const SpinCenterParams& p, double Bz);

}  // namespace spindec
