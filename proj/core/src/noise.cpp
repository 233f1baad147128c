#include "spindec/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "spindec/constants.hpp"

namespace spindec {

namespace cst = constants;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void validate(const SurfacePointChargeNoise& c) {
  require(c.n_s >= 0.0, "point charge noise: n_s must be >= 0");
  require(c.z_def > 0.0, "point charge noise: z_def must be > 0");
  require(c.tau_p > 0.0, "point charge noise: tau_p must be > 0");
  require(c.epsilon_r > 0.0, "point charge noise: epsilon_r must be > 0");
}

void validate(const SurfaceDipoleNoise& c) {
  require(c.n_sd >= 0.0, "dipole noise: n_sd must be >= 0");
  require(c.z_def > 0.0, "dipole noise: z_def must be > 0");
  require(c.dipole.mean_square_d >= 0.0, "dipole noise: <d^2> must be >= 0");
  require(c.dipole.Gamma_d > 0.0, "dipole noise: Gamma_d must be > 0");
  require(c.epsilon_r > 0.0, "dipole noise: epsilon_r must be > 0");
}

void validate(const BulkNearNoise& c) {
  require(c.n_v >= 0.0, "bulk noise: n_v must be >= 0");
  require(c.epsilon_r > 0.0, "bulk noise: epsilon_r must be > 0");
}

void validate(const MagneticDipoleNoise& c) {
  require(c.n_sd >= 0.0, "magnetic dipole noise: n_sd must be >= 0");
  require(c.z_def > 0.0, "magnetic dipole noise: z_def must be > 0");
  require(c.tau > 0.0, "magnetic dipole noise: tau must be > 0");
}

void validate(const ChargedMotionNoise& c) {
  require(c.n_s > 0.0, "charged motion noise: n_s must be > 0");
  require(c.z_def > 0.0, "charged motion noise: z_def must be > 0");
  require(c.T > 0.0, "charged motion noise: T must be > 0");
  require(c.m_star > 0.0, "charged motion noise: m_star must be > 0");
  require(c.tau > 0.0, "charged motion noise: tau must be > 0");
}

void validate(const ActivatedEnergyBand& c) {
  require(c.E1 > 0.0 && c.E2 > c.E1, "activated band: need E2 > E1 > 0");
  require(c.tau_0 > 0.0, "activated band: tau_0 must be > 0");
  require(c.T > 0.0, "activated band: T must be > 0");
}

Vector3d surface_angular_factors(double theta) {
  const double c2 = std::cos(2.0 * theta);
  return {0.25, (3.0 - c2) / 8.0, (3.0 + c2) / 8.0};
}

double coulomb_factor(double eps_r, const std::optional<double>& eps_ext_r) {
  const double eps = cst::permittivity(eps_r);
  if (eps_ext_r) {
    const double eps_ext = cst::permittivity(*eps_ext_r);
    return 1.0 / (2.0 * cst::pi * (eps + eps_ext));
  }
  return 1.0 / (4.0 * cst::pi * eps);
}

double interface_rescale(double epsilon_r, double epsilon_ext) {
  const double f = 2.0 * epsilon_r / (epsilon_r + epsilon_ext);
  return f * f;
}

// ---------------------------------------------------------------------------

Vector3d point_charge_variance(const SurfacePointChargeNoise& c) {
  validate(c);
  const double k = cst::elementary_charge * coulomb_factor(c.epsilon_r, c.epsilon_ext);
  const double pref = k * k * cst::pi * c.n_s / (c.z_def * c.z_def);
  return pref * surface_angular_factors(c.theta);
}

Vector3d point_charge_spectrum(const SurfacePointChargeNoise& c, double omega) {
  const Vector3d var = point_charge_variance(c);
  const double shape = 2.0 * c.tau_p / (1.0 + omega * omega * c.tau_p * c.tau_p);
  return var * shape;
}

Vector3d dipole_variance(const SurfaceDipoleNoise& c) {
  validate(c);
  const double k = cst::elementary_charge * coulomb_factor(c.epsilon_r, c.epsilon_ext);
  const double z2 = c.z_def * c.z_def;
  const double pref = k * k * cst::pi * c.n_sd * c.dipole.mean_square_d / (z2 * z2);
  return pref * surface_angular_factors(c.theta);
}

double dipole_length_spectrum(const DipoleSpectrumParams& d, double omega) {
  if (!(d.Gamma_d > 0.0))
    throw std::invalid_argument("dipole spectrum: Gamma_d must be > 0");
  const double dw = omega - d.omega_d;
  const double hw = 0.5 * d.Gamma_d;
  return d.mean_square_d * d.Gamma_d / (dw * dw + hw * hw);
}

Vector3d dipole_spectrum(const SurfaceDipoleNoise& c, double omega) {
  validate(c);
  const double k = cst::elementary_charge * coulomb_factor(c.epsilon_r, c.epsilon_ext);
  const double z2 = c.z_def * c.z_def;
  const double pref = k * k * cst::pi * c.n_sd / (z2 * z2);
  return pref * dipole_length_spectrum(c.dipole, omega) * surface_angular_factors(c.theta);
}

double dipole_mean_square_length(double T, double m_star, double omega_d) {
  if (!(omega_d > 0.0))
    throw std::invalid_argument("dipole_mean_square_length: omega_d must be > 0");
  if (!(m_star > 0.0) || T < 0.0)
    throw std::invalid_argument("dipole_mean_square_length: bad T or m_star");
  return 3.0 * cst::boltzmann * T / (m_star * omega_d * omega_d);
}

double tunneling_rate(double E_b, double b, double m_star) {
  if (!(E_b > 0.0) || !(b > 0.0) || !(m_star > 0.0))
    throw std::invalid_argument("tunneling_rate: E_b, b, m_star must be > 0");
  const double omega_d = std::sqrt(2.0 * E_b / (m_star * b * b));
  const double x = 2.0 * E_b / (cst::hbar * omega_d);
  return 2.0 * omega_d / std::pow(cst::pi, 1.5) * std::sqrt(x) * std::exp(-x);
}

double bulk_near_field(const BulkNearNoise& c) {
  validate(c);
  const double eps = cst::permittivity(c.epsilon_r);
  return cst::elementary_charge * std::pow(c.n_v, 2.0 / 3.0) /
         (std::numbers::sqrt2_v<double> * cst::pi * eps);
}

Vector3d bulk_near_variance(const BulkNearNoise& c) {
  const double e2 = bulk_near_field(c) * bulk_near_field(c);
  return Vector3d::Constant(e2 / 3.0);
}

// Both optimal depths solve  total surface variance(z) == total bulk
// variance.  The angular factors sum to 1, so the surface totals are
// (e/4 pi eps)^2 pi n / z^2 (point) and (e/4 pi eps)^2 pi n <d^2> / z^4
// (dipole); the permittivity cancels against the bulk level.
double optimal_depth_point(double n_s, double n_v) {
  if (!(n_v > 0.0)) throw std::invalid_argument("optimal_depth_point: n_v must be > 0");
  if (n_s < 0.0) throw std::invalid_argument("optimal_depth_point: n_s must be >= 0");
  return std::sqrt(cst::pi * n_s / 8.0) / std::pow(n_v, 2.0 / 3.0);
}

double optimal_depth_dipole(double n_sd, double d_bar, double n_v) {
  if (!(n_v > 0.0)) throw std::invalid_argument("optimal_depth_dipole: n_v must be > 0");
  if (n_sd < 0.0 || d_bar < 0.0)
    throw std::invalid_argument("optimal_depth_dipole: n_sd, d_bar must be >= 0");
  const double inner = std::sqrt(cst::pi) * d_bar * std::sqrt(n_sd) /
                       (std::pow(2.0, 1.5) * std::pow(n_v, 2.0 / 3.0));
  return std::sqrt(inner);
}

// ---------------------------------------------------------------------------

double moment_spectrum(const MagneticDipoleNoise& c, double omega) {
  validate(c);
  const double mu = cst::moment_from_gyromagnetic(c.gamma_bath);
  const LorentzianSpectrum s{mu * mu, c.tau, c.delta_omega_mu};
  return s(omega);
}

Vector3d magnetic_dipole_spectrum(const MagneticDipoleNoise& c, double omega) {
  const double k = cst::vacuum_permeability / (4.0 * cst::pi);
  const double z2 = c.z_def * c.z_def;
  const double pref = k * k * cst::pi * c.n_sd / (z2 * z2);
  return pref * moment_spectrum(c, omega) * surface_angular_factors(c.theta);
}

Vector3d magnetic_dipole_variance(const MagneticDipoleNoise& c) {
  validate(c);
  const double mu = cst::moment_from_gyromagnetic(c.gamma_bath);
  const double k = cst::vacuum_permeability / (4.0 * cst::pi);
  const double z2 = c.z_def * c.z_def;
  const double pref = k * k * cst::pi * c.n_sd * mu * mu / (z2 * z2);
  return pref * surface_angular_factors(c.theta);
}

double charged_motion_spectrum(const ChargedMotionNoise& c, double omega) {
  validate(c);
  const double e = cst::elementary_charge;
  const double sigma_2d =
      c.n_s * e * e * c.tau / (c.m_star * (1.0 + omega * omega * c.tau * c.tau));
  const double mu0 = cst::vacuum_permeability;
  return mu0 * mu0 * cst::boltzmann * c.T * sigma_2d /
         (16.0 * cst::pi * c.z_def * c.z_def);
}

Vector3d charged_motion_variance(const ChargedMotionNoise& c) {
  // integral of the Lorentzian profile: S(0) / (2 tau)
  return Vector3d::Constant(charged_motion_spectrum(c, 0.0) / (2.0 * c.tau));
}

// ---------------------------------------------------------------------------

double one_over_f_spectrum(const ActivatedEnergyBand& band, double omega) {
  validate(band);
  const double kT = cst::boltzmann * band.T;
  const double pref = 2.0 * kT / (band.E2 - band.E1);
  // A >= B since E2 > E1; exp may overflow to +inf, which the branches below
  // handle through the reciprocal form.
  const double A = band.tau_0 * std::exp(band.E2 / kT);
  const double B = band.tau_0 * std::exp(band.E1 / kT);

  const double w = std::abs(omega);
  if (w == 0.0) return pref * (A - B);

  const double x = w * A;
  const double y = w * B;
  double diff;
  if (y > 1.0) {
    // atan(t) = pi/2 - atan(1/t) for t > 0; the reciprocal form keeps full
    // precision when both arguments are large.
    diff = std::atan(1.0 / y) - std::atan(1.0 / x);
  } else {
    diff = std::atan(x) - std::atan(y);
  }
  return pref * diff / w;
}

SpectralRegime classify_regime(const ActivatedEnergyBand& band, double omega) {
  validate(band);
  const double kT = cst::boltzmann * band.T;
  const double w = std::abs(omega);
  if (w == 0.0) return SpectralRegime::flat;
  const double l = std::log(w * band.tau_0);
  if (l < -band.E2 / kT) return SpectralRegime::flat;
  if (l > -band.E1 / kT) return SpectralRegime::inverse_omega_squared;
  return SpectralRegime::inverse_omega;
}

// ---------------------------------------------------------------------------

Vector3d ratio_point_vs_dipole(const SurfacePointChargeNoise& p,
                               const SurfaceDipoleNoise& d, double omega) {
  validate(p);
  validate(d);
  const double kp = coulomb_factor(p.epsilon_r, p.epsilon_ext);
  const double kd = coulomb_factor(d.epsilon_r, d.epsilon_ext);
  const double zp2 = p.z_def * p.z_def;
  const double zd2 = d.z_def * d.z_def;
  const double dw = omega - d.dipole.omega_d;
  const double hw = 0.5 * d.dipole.Gamma_d;
  const double scalar =
      (kp * kp) / (kd * kd) * (p.n_s / d.n_sd) * (zd2 * zd2 / zp2) /
      d.dipole.mean_square_d *
      (2.0 * p.tau_p / (1.0 + omega * omega * p.tau_p * p.tau_p)) *
      (dw * dw + hw * hw) / d.dipole.Gamma_d;
  const Vector3d fp = surface_angular_factors(p.theta);
  const Vector3d fd = surface_angular_factors(d.theta);
  return scalar * fp.cwiseQuotient(fd);
}

Vector3d ratio_motion_vs_magdipole(const ChargedMotionNoise& q,
                                   const MagneticDipoleNoise& m, double omega) {
  validate(q);
  validate(m);
  const double e = cst::elementary_charge;
  const double sigma_2d =
      q.n_s * e * e * q.tau / (q.m_star * (1.0 + omega * omega * q.tau * q.tau));
  const double zq2 = q.z_def * q.z_def;
  const double zm2 = m.z_def * m.z_def;
  const double smu = moment_spectrum(m, omega);
  const double iso =
      cst::boltzmann * q.T * sigma_2d * zm2 * zm2 / (zq2 * m.n_sd * smu);
  return iso * surface_angular_factors(m.theta).cwiseInverse();
}

// ---------------------------------------------------------------------------

Vector3d NoiseStack::electric_spectrum(double omega) const {
  Vector3d s = Vector3d::Zero();
  for (const auto& src : sources) {
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, SurfacePointChargeNoise>)
            s += point_charge_spectrum(c, omega);
          else if constexpr (std::is_same_v<T, SurfaceDipoleNoise>)
            s += dipole_spectrum(c, omega);
        },
        src);
  }
  return s;
}

Vector3d NoiseStack::magnetic_spectrum(double omega) const {
  Vector3d s = Vector3d::Zero();
  for (const auto& src : sources) {
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, MagneticDipoleNoise>)
            s += magnetic_dipole_spectrum(c, omega);
          else if constexpr (std::is_same_v<T, ChargedMotionNoise>)
            s += Vector3d::Constant(charged_motion_spectrum(c, omega));
        },
        src);
  }
  return s;
}

}  // namespace spindec
