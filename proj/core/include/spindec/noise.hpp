#pragma once

// Analytic spectral-density models for the fluctuating electric and magnetic
// fields seen by a near-surface defect: surface point charges, surface
// electric dipoles, bulk charge fluctuators, surface magnetic moments,
// drifting surface charges, and the activated-energy-band spectrum with its
// flat / 1/w / 1/w^2 regimes.
//
// Conventions: spectra are double-sided in angular frequency,
//   <X(t)X(0)> = Int dw/2pi S(w) e^{iwt},
// so a Lorentzian of variance V and correlation time tau integrates back to V.
// Electric spectra are V^2 s / m^2 per defect-frame axis, magnetic are T^2 s.

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

namespace spindec {

using Eigen::Vector3d;

// ---------------------------------------------------------------------------
// frequency profiles

/// S(w) = variance * 2 tau / (1 + (w - omega_center)^2 tau^2)
struct LorentzianSpectrum {
  double variance = 0.0;      ///< integrated weight [X^2]
  double tau = 0.0;           ///< correlation time [s]
  double omega_center = 0.0;  ///< peak position [rad/s]

  double operator()(double omega) const {
    const double u = (omega - omega_center) * tau;
    return variance * 2.0 * tau / (1.0 + u * u);
  }
};

// ---------------------------------------------------------------------------
// noise source configurations

/// Fluctuating point-like charges on the surface plane.
struct SurfacePointChargeNoise {
  double n_s = 0.0;        ///< areal density of fluctuators [1/m^2]
  double z_def = 0.0;      ///< defect depth [m]
  double theta = 0.0;      ///< symmetry-axis tilt [rad]
  double epsilon_r = 5.7;  ///< host relative permittivity
  double tau_p = 0.0;      ///< charge correlation time [s]
  /// set when the charges sit at the crystal/environment interface;
  /// value is the external relative permittivity
  std::optional<double> epsilon_ext;
};

/// Single-fluctuator dipole spectrum S_d(w) [m^2 s].
struct DipoleSpectrumParams {
  double mean_square_d = 0.0;  ///< <d^2> [m^2]
  double omega_d = 0.0;        ///< oscillator / splitting frequency [rad/s]
  double Gamma_d = 0.0;        ///< transition rate [1/s]
};

/// Fluctuating electric dipoles (trapped charges) on the surface plane.
struct SurfaceDipoleNoise {
  double n_sd = 0.0;       ///< areal dipole density [1/m^2]
  double z_def = 0.0;      ///< defect depth [m]
  double theta = 0.0;      ///< tilt [rad]
  double epsilon_r = 5.7;  ///< host relative permittivity
  DipoleSpectrumParams dipole;
  std::optional<double> epsilon_ext;
};

/// Depth-independent electric noise floor from bulk fluctuators.
struct BulkNearNoise {
  double n_v = 0.0;        ///< volume density of fluctuators [1/m^3]
  double epsilon_r = 5.7;  ///< host relative permittivity
};

/// Fluctuating magnetic moments (surface spins).
struct MagneticDipoleNoise {
  double n_sd = 0.0;            ///< areal moment density [1/m^2]
  double z_def = 0.0;           ///< defect depth [m]
  double theta = 0.0;           ///< tilt [rad]
  double tau = 0.0;             ///< moment correlation time [s]
  double delta_omega_mu = 0.0;  ///< bath spin splitting [rad/s]
  double gamma_bath = 0.0;      ///< bath gyromagnetic ratio [Hz/T]
};

/// Magnetic noise from thermal drift of surface charges (2D Drude gas).
struct ChargedMotionNoise {
  double n_s = 0.0;     ///< areal charge density [1/m^2]
  double z_def = 0.0;   ///< defect depth [m]
  double T = 0.0;       ///< temperature [K]
  double m_star = 0.0;  ///< carrier effective mass [kg]
  double tau = 0.0;     ///< Drude relaxation time [s]
};

/// Uniform distribution of activation energies E1..E2 with attempt time
/// tau_0; produces the flat / 1/w / 1/w^2 spectrum family.
struct ActivatedEnergyBand {
  double E1 = 0.0;     ///< lower band edge [J]
  double E2 = 0.0;     ///< upper band edge [J]
  double tau_0 = 0.0;  ///< attempt time [s]
  double T = 0.0;      ///< temperature [K]
};

void validate(const SurfacePointChargeNoise& c);
void validate(const SurfaceDipoleNoise& c);
void validate(const BulkNearNoise& c);
void validate(const MagneticDipoleNoise& c);
void validate(const ChargedMotionNoise& c);
void validate(const ActivatedEnergyBand& c);

// ---------------------------------------------------------------------------
// shared geometry

/// Per-axis angular weights {1/4, (3-cos2theta)/8, (3+cos2theta)/8} shared by
/// every surface-sheet integral; the y+z sum is theta-independent.
Vector3d surface_angular_factors(double theta);

/// Coulomb kernel prefactor 1/(4 pi eps) [m/F], or the interface form
/// 1/(2 pi (eps + eps_ext)) when eps_ext_r is set.
double coulomb_factor(double eps_r, const std::optional<double>& eps_ext_r);

/// Variance multiplier (2 eps / (eps + eps_ext))^2 when moving charges from
/// the host interior to the host/environment interface.
double interface_rescale(double epsilon_r, double epsilon_ext);

// ---------------------------------------------------------------------------
// electric noise

/// Per-axis field variance <dE_mu^2> [V^2/m^2]; depth law z^-2.
Vector3d point_charge_variance(const SurfacePointChargeNoise& c);

/// Per-axis S_E(w); Lorentzian of correlation time tau_p on each axis.
Vector3d point_charge_spectrum(const SurfacePointChargeNoise& c, double omega);

/// Per-axis field variance [V^2/m^2]; depth law z^-4.
Vector3d dipole_variance(const SurfaceDipoleNoise& c);

/// Single-dipole spectrum S_d(w) = <d^2> Gamma_d / ((w-w_d)^2 + (Gamma_d/2)^2).
double dipole_length_spectrum(const DipoleSpectrumParams& d, double omega);

/// Per-axis S_E(w) for the dipole sheet.
Vector3d dipole_spectrum(const SurfaceDipoleNoise& c, double omega);

/// Equipartition estimate <d^2> = 3 kB T / (m_star omega_d^2) [m^2].
double dipole_mean_square_length(double T, double m_star, double omega_d);

/// Tunneling rate through a 1D parabolic double well of barrier E_b [J] and
/// width b [m]: Gamma0 = (2 w_d / pi^{3/2}) sqrt(2E_b/hbar w_d) e^{-2E_b/hbar w_d},
/// with w_d = sqrt(2 E_b / (m_star b^2)).
double tunneling_rate(double E_b, double b, double m_star);

/// Total bulk field magnitude |dE_b| = e n_v^{2/3} / (sqrt(2) pi eps) [V/m].
double bulk_near_field(const BulkNearNoise& c);

/// Per-axis bulk variance, isotropic: |dE_b|^2 / 3.
Vector3d bulk_near_variance(const BulkNearNoise& c);

/// Depth at which the total surface variance equals the total bulk variance.
double optimal_depth_point(double n_s, double n_v);
double optimal_depth_dipole(double n_sd, double d_bar, double n_v);

// ---------------------------------------------------------------------------
// magnetic noise

/// Bath-moment spectrum S_mu(w) [ (J/T)^2 s ], Lorentzian at delta_omega_mu.
double moment_spectrum(const MagneticDipoleNoise& c, double omega);

/// Per-axis S_B(w) [T^2 s]; depth law z^-4.
Vector3d magnetic_dipole_spectrum(const MagneticDipoleNoise& c, double omega);

/// Per-axis magnetic-moment field variance [T^2] (integrated spectrum).
Vector3d magnetic_dipole_variance(const MagneticDipoleNoise& c);

/// Isotropic S_B(w) [T^2 s] from the 2D conductivity; depth law z^-2.
double charged_motion_spectrum(const ChargedMotionNoise& c, double omega);

/// Per-axis variance of the drift-current field [T^2] (integrated spectrum).
Vector3d charged_motion_variance(const ChargedMotionNoise& c);

// ---------------------------------------------------------------------------
// activated-band spectrum

enum class SpectralRegime { flat, inverse_omega, inverse_omega_squared };

/// Arctan closed form; w = 0 returns the analytic flat-limit value.
/// Units: [s] (multiply by a field-variance prefactor to get a PSD).
double one_over_f_spectrum(const ActivatedEnergyBand& band, double omega);

/// Which asymptotic branch |omega| falls in, by comparing w tau_0 against
/// e^{-E2/kT} and e^{-E1/kT}.
SpectralRegime classify_regime(const ActivatedEnergyBand& band, double omega);

// ---------------------------------------------------------------------------
// competition ratios (per defect-frame axis)

/// S_E^point(w) / S_E^dipole(w), reduced closed form.
Vector3d ratio_point_vs_dipole(const SurfacePointChargeNoise& p,
                               const SurfaceDipoleNoise& d, double omega);

/// S_B^drift(w) / S_B^moment(w), reduced closed form.
Vector3d ratio_motion_vs_magdipole(const ChargedMotionNoise& q,
                                   const MagneticDipoleNoise& m, double omega);

// ---------------------------------------------------------------------------
// aggregation

/// A heterogeneous set of noise sources feeding one defect.
using NoiseSource = std::variant<SurfacePointChargeNoise, SurfaceDipoleNoise,
                                 MagneticDipoleNoise, ChargedMotionNoise>;

struct NoiseStack {
  std::vector<NoiseSource> sources;

  /// Sum of per-axis electric spectra at omega [V^2 s / m^2].
  Vector3d electric_spectrum(double omega) const;
  /// Sum of per-axis magnetic spectra at omega [T^2 s].
  Vector3d magnetic_spectrum(double omega) const;
};

/// Evaluate a per-axis spectrum over a frequency grid.
template <typename Fn>
std::vector<Vector3d> sample_spectrum(const Fn& fn, const std::vector<double>& grid) {
  std::vector<Vector3d> out;
  out.reserve(grid.size());
  for (double w : grid) out.push_back(fn(w));
  return out;
}

}  // namespace spindec
