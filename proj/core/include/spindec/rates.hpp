#pragma once

// Transition-frequency-resolved decay channels.  Five physical channels are
// read off the noise spectra at the level gaps; two derived combinations
// (the cross-subspace rates Omega_+-) drive the population dynamics.

#include <functional>

#include "spindec/noise.hpp"
#include "spindec/spin_center.hpp"

namespace spindec {

/// Per-axis spectral density as a function of angular frequency.
using SpectrumFn = std::function<Vector3d(double)>;

struct RateSet {
  double gamma_dperp_pm = 0.0;   ///< transverse-E channel at omega_pm [1/s]
  double gamma_dprime_p0 = 0.0;  ///< cross-E channel at omega_p0 [1/s]
  double gamma_dprime_m0 = 0.0;  ///< cross-E channel at omega_m0 [1/s]
  double gamma_dpar_0 = 0.0;     ///< longitudinal-E channel at zero frequency [1/s]
  double gamma_gperp_p0 = 0.0;   ///< transverse-B channel at omega_p0 [1/s]
  double gamma_gperp_m0 = 0.0;   ///< transverse-B channel at omega_m0 [1/s]
  double gamma_gpar_0 = 0.0;     ///< longitudinal-B channel at zero frequency [1/s]

  /// True when a level gap fell inside the degeneracy guard band; the
  /// secular construction of the rates is unreliable there.
  bool degeneracy_warning = false;

  /// Combined electric + magnetic cross-subspace channels.
  double gamma_gd_p0() const { return gamma_dprime_p0 + gamma_gperp_p0; }
  double gamma_gd_m0() const { return gamma_dprime_m0 + gamma_gperp_m0; }

  /// Population-transfer rates between |T+->,|T0>: Omega_+- = gamma_gd/2.
  double omega_plus() const { return 0.5 * gamma_gd_p0(); }
  double omega_minus() const { return 0.5 * gamma_gd_m0(); }
  /// Direct |T+>,|T-> mixing rate.
  double gamma_small() const { return gamma_dperp_pm; }

  double max_rate() const;
};

/// Throws std::invalid_argument when any channel is negative.
void validate(const RateSet& r);

/// Angular-frequency gap below which rate construction flags the result.
inline constexpr double default_degeneracy_guard = 2.0 * 3.14159265358979323846 * 10.0e6;

/// Build the channel rates from per-axis spectra evaluated at the level gaps.
/// The coupling constants enter as angular quantities (2 pi times the Hz-unit
/// values stored in SpinCenterParams).
RateSet rates_from_spectra(const SpectrumFn& electric, const SpectrumFn& magnetic,
                           const TransitionFrequencies& freqs,
                           const SpinCenterParams& params,
                           double degeneracy_guard = default_degeneracy_guard);

/// Equal-gap limit (omega_p0 ~ omega_m0) relaxation rates (1/T1+, 1/T1-) =
/// (2 gamma + Omega, 3 Omega).  Valid only on the gamma >= Omega branch;
/// throws std::invalid_argument otherwise.
std::pair<double, double> equal_omega_rates(double gamma, double Omega);

}  // namespace spindec
