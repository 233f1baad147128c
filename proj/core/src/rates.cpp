#include "spindec/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spindec/constants.hpp"

namespace spindec {

double RateSet::max_rate() const {
  return std::max({gamma_dperp_pm, gamma_dprime_p0, gamma_dprime_m0, gamma_dpar_0,
                   gamma_gperp_p0, gamma_gperp_m0, gamma_gpar_0});
}

void validate(const RateSet& r) {
  const double all[] = {r.gamma_dperp_pm, r.gamma_dprime_p0, r.gamma_dprime_m0,
                        r.gamma_dpar_0,   r.gamma_gperp_p0,  r.gamma_gperp_m0,
                        r.gamma_gpar_0};
  for (double v : all) {
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("RateSet: rates must be finite and >= 0");
  }
}

RateSet rates_from_spectra(const SpectrumFn& electric, const SpectrumFn& magnetic,
                           const TransitionFrequencies& freqs,
                           const SpinCenterParams& params,
                           double degeneracy_guard) {
  using constants::two_pi;
  const double dpe = two_pi * params.d_perp;
  const double dpr = two_pi * params.d_prime;
  const double dpa = two_pi * params.d_par;
  const double gpe = two_pi * params.gamma_perp;
  const double gpa = two_pi * params.gamma_par;

  const Vector3d se_pm = electric(freqs.omega_pm);
  const Vector3d se_p0 = electric(freqs.omega_p0);
  const Vector3d se_m0 = electric(freqs.omega_m0);
  const Vector3d se_0 = electric(0.0);
  const Vector3d sb_p0 = magnetic(freqs.omega_p0);
  const Vector3d sb_m0 = magnetic(freqs.omega_m0);
  const Vector3d sb_0 = magnetic(0.0);

  RateSet r;
  r.gamma_dperp_pm = dpe * dpe * (se_pm.x() + se_pm.y());
  r.gamma_dprime_p0 = dpr * dpr * (se_p0.x() + se_p0.y());
  r.gamma_dprime_m0 = dpr * dpr * (se_m0.x() + se_m0.y());
  r.gamma_dpar_0 = dpa * dpa * se_0.z();
  r.gamma_gperp_p0 = gpe * gpe * (sb_p0.x() + sb_p0.y());
  r.gamma_gperp_m0 = gpe * gpe * (sb_m0.x() + sb_m0.y());
  r.gamma_gpar_0 = gpa * gpa * sb_0.z();

  r.degeneracy_warning = std::abs(freqs.omega_p0) < degeneracy_guard ||
                         std::abs(freqs.omega_m0) < degeneracy_guard ||
                         std::abs(freqs.omega_pm) < degeneracy_guard;
  validate(r);
  return r;
}

std::pair<double, double> equal_omega_rates(double gamma, double Omega) {
  if (gamma < 0.0 || Omega < 0.0)
    throw std::invalid_argument("equal_omega_rates: rates must be >= 0");
  if (gamma < Omega)
    throw std::invalid_argument(
        "equal_omega_rates: closed form only valid on the gamma >= Omega branch");
  return {2.0 * gamma + Omega, 3.0 * Omega};
}

}  // namespace spindec
