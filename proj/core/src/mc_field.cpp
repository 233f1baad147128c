#include "spindec/mc_field.hpp"

#include <cmath>
#include <stdexcept>

#include "spindec/constants.hpp"
#include "spindec/geometry.hpp"
#include "spindec/processes.hpp"
#include "spindec/quadrature.hpp"

namespace spindec {

namespace cst = constants;
using Eigen::Vector2d;
using Eigen::Vector3d;

namespace {

// Rotate surface-frame components into the defect frame.
Vector3d to_defect_frame(const Vector3d& v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {v.x(), v.y() * c - v.z() * s, v.y() * s + v.z() * c};
}

Vector3d point_field(double k_e, const Vector3d& R) {
  const double r2 = R.squaredNorm();
  return k_e * R / (r2 * std::sqrt(r2));
}

// Field of a unit-amplitude dipole along `axis` (defect frame) at offset R.
Vector3d dipole_field(double pref, const Vector3d& axis, const Vector3d& R) {
  const double r2 = R.squaredNorm();
  const double r5 = r2 * r2 * std::sqrt(r2);
  return pref * (3.0 * axis.dot(R) * R - axis * r2) / r5;
}

// Unit-velocity Biot-Savart fields for in-plane motion along x' and y',
// returned in the defect frame.  R_surf = (x', y', z_def).
void drift_basis_fields(double pref, const Vector3d& R_surf, double theta,
                        Vector3d& gx, Vector3d& gy) {
  const double r2 = R_surf.squaredNorm();
  const double r3 = r2 * std::sqrt(r2);
  const Vector3d bx(0.0, -R_surf.z(), R_surf.y());
  const Vector3d by(R_surf.z(), 0.0, -R_surf.x());
  gx = to_defect_frame(pref * bx / r3, theta);
  gy = to_defect_frame(pref * by / r3, theta);
}

}  // namespace

std::vector<Vector2d> sample_surface_positions(double n_areal, double L,
                                               std::uint64_t seed,
                                               std::uint64_t stream) {
  if (n_areal < 0.0 || !(L > 0.0))
    throw std::invalid_argument("sample_surface_positions: need n >= 0 and L > 0");
  CounterRng rng(seed, stream);
  const std::uint64_t count = rng.poisson(n_areal * L * L);
  std::vector<Vector2d> pos(count);
  for (auto& p : pos) {
    p.x() = (rng.uniform01() - 0.5) * L;
    p.y() = (rng.uniform01() - 0.5) * L;
  }
  return pos;
}

FluctuatorEnsemble FluctuatorEnsemble::create(const EnsembleConfig& cfg) {
  if (!(cfg.z_def > 0.0)) throw std::invalid_argument("EnsembleConfig: z_def must be > 0");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("EnsembleConfig: tau must be > 0");
  FluctuatorEnsemble e;
  e.cfg = cfg;
  // positions and dynamics draw from distinct substreams so the layout is
  // reproducible independently of the series length
  e.positions = sample_surface_positions(cfg.n_areal, cfg.L, cfg.seed, 2 * cfg.stream);
  return e;
}

std::vector<double> TimeSeries::axis(int i) const {
  std::vector<double> out(samples.size());
  for (size_t k = 0; k < samples.size(); ++k) out[k] = samples[k](i);
  return out;
}

TimeSeries simulate_field_series(const FluctuatorEnsemble& ens, double dt,
                                 int n_samples) {
  const EnsembleConfig& cfg = ens.cfg;
  if (!(dt > 0.0)) throw std::invalid_argument("simulate_field_series: dt must be > 0");
  if (n_samples < 2) throw std::invalid_argument("simulate_field_series: need >= 2 samples");

  CounterRng rng(cfg.seed, 2 * cfg.stream + 1);
  const FrameRotation rot{cfg.theta};
  const size_t n = ens.positions.size();

  // per-fluctuator geometric field vectors (defect frame, unit amplitude)
  std::vector<Vector3d> g1(n), g2(n);
  bool two_channels = false;
  double amp = 1.0;  // process amplitude scale

  switch (cfg.kind) {
    case FluctuatorKind::point_charge: {
      const double k_e = cst::elementary_charge * coulomb_factor(cfg.epsilon_r, std::nullopt);
      for (size_t i = 0; i < n; ++i) {
        const Vector3d R = surface_to_defect_displacement(
            rot, ens.positions[i].x(), ens.positions[i].y(), cfg.z_def);
        g1[i] = point_field(k_e, R);
      }
      amp = 1.0;
      break;
    }
    case FluctuatorKind::electric_dipole:
    case FluctuatorKind::magnetic_moment: {
      const bool electric = cfg.kind == FluctuatorKind::electric_dipole;
      const double pref =
          electric ? cst::elementary_charge * coulomb_factor(cfg.epsilon_r, std::nullopt)
                   : cst::vacuum_permeability / (4.0 * cst::pi);
      const Vector3d axes[3] = {surface_x_axis(rot), surface_y_axis(rot),
                                surface_z_axis(rot)};
      for (size_t i = 0; i < n; ++i) {
        const Vector3d R = surface_to_defect_displacement(
            rot, ens.positions[i].x(), ens.positions[i].y(), cfg.z_def);
        const int ax = static_cast<int>(rng.uniform01() * 3.0) % 3;
        g1[i] = dipole_field(pref, axes[ax], R);
      }
      amp = electric ? cfg.d_rms : cst::moment_from_gyromagnetic(cfg.gamma_bath);
      break;
    }
    case FluctuatorKind::drift_current: {
      if (!(cfg.T > 0.0) || !(cfg.m_star > 0.0))
        throw std::invalid_argument("simulate_field_series: drift needs T, m_star > 0");
      const double pref = cst::vacuum_permeability * cst::elementary_charge / (4.0 * cst::pi);
      for (size_t i = 0; i < n; ++i) {
        const Vector3d R_surf(ens.positions[i].x(), ens.positions[i].y(), cfg.z_def);
        drift_basis_fields(pref, R_surf, cfg.theta, g1[i], g2[i]);
      }
      amp = std::sqrt(cst::boltzmann * cfg.T / cfg.m_star);  // thermal velocity
      two_channels = true;
      break;
    }
  }

  // drift current always uses OU velocities; other kinds follow cfg.dynamics
  const bool use_ou =
      two_channels || cfg.dynamics == DynamicsKind::ornstein_uhlenbeck;

  std::vector<OrnsteinUhlenbeck> ou;
  std::vector<TelegraphProcess> tp;
  const size_t channels = n * (two_channels ? 2 : 1);
  if (use_ou) {
    ou.reserve(channels);
    for (size_t i = 0; i < channels; ++i) ou.emplace_back(cfg.tau, amp, rng);
  } else {
    tp.reserve(channels);
    for (size_t i = 0; i < channels; ++i) tp.emplace_back(cfg.tau, amp, rng);
  }

  TimeSeries ts;
  ts.dt = dt;
  ts.samples.resize(static_cast<size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    if (s > 0) {
      if (use_ou)
        for (auto& p : ou) p.step(dt, rng);
      else
        for (auto& p : tp) p.step(dt, rng);
    }
    Vector3d f = Vector3d::Zero();
    if (two_channels) {
      for (size_t i = 0; i < n; ++i)
        f += ou[2 * i].state() * g1[i] + ou[2 * i + 1].state() * g2[i];
    } else if (use_ou) {
      for (size_t i = 0; i < n; ++i) f += ou[i].state() * g1[i];
    } else {
      for (size_t i = 0; i < n; ++i) f += tp[i].state() * g1[i];
    }
    ts.samples[static_cast<size_t>(s)] = f;
  }
  return ts;
}

Vector3d series_variance3(const TimeSeries& ts) {
  if (ts.samples.empty()) throw std::invalid_argument("series_variance3: empty series");
  Vector3d mean = Vector3d::Zero();
  for (const auto& s : ts.samples) mean += s;
  mean /= static_cast<double>(ts.samples.size());
  Vector3d var = Vector3d::Zero();
  for (const auto& s : ts.samples) var += (s - mean).cwiseAbs2();
  return var / static_cast<double>(ts.samples.size());
}

// ---------------------------------------------------------------------------

namespace {

// Integrate f(x', y') over [0, L/2] x [-L/2, L/2] and double it (all the
// integrands below are even in x').  The substitution x = z sinh(u),
// y = z sinh(v) flattens the z-wide peak at the origin, so the adaptive rule
// converges in a handful of refinements even for L/z ~ 1000.
Vector3d surface_quadrature(const std::function<Vector3d(double, double)>& f,
                            double L, double z_scale) {
  const double cap = std::asinh(L / (2.0 * z_scale));
  const QuadratureOptions outer{1e-7, 0.0, 2000};
  const QuadratureOptions inner{1e-8, 0.0, 2000};
  const Vector3d res = integrate_gk3(
      [&](double u) {
        const double x = z_scale * std::sinh(u);
        const double jx = z_scale * std::cosh(u);
        return Vector3d(
            jx * integrate_gk3(
                     [&](double v) {
                       const double y = z_scale * std::sinh(v);
                       const double jy = z_scale * std::cosh(v);
                       return Vector3d(jy * f(x, y));
                     },
                     -cap, cap, inner));
      },
      0.0, cap, outer);
  return 2.0 * res;
}

}  // namespace

Vector3d variance_surface_integral(const SurfacePointChargeNoise& c, double L) {
  validate(c);
  if (!(L > 0.0)) throw std::invalid_argument("variance_surface_integral: L must be > 0");
  const double k_e = cst::elementary_charge * coulomb_factor(c.epsilon_r, c.epsilon_ext);
  const FrameRotation rot{c.theta};
  return surface_quadrature(
      [&](double x, double y) {
        const Vector3d R = surface_to_defect_displacement(rot, x, y, c.z_def);
        return Vector3d(c.n_s * point_field(k_e, R).cwiseAbs2());
      },
      L, c.z_def);
}

Vector3d variance_surface_integral(const SurfaceDipoleNoise& c, double L) {
  validate(c);
  if (!(L > 0.0)) throw std::invalid_argument("variance_surface_integral: L must be > 0");
  const double k_e = cst::elementary_charge * coulomb_factor(c.epsilon_r, c.epsilon_ext);
  const FrameRotation rot{c.theta};
  const Vector3d axes[3] = {surface_x_axis(rot), surface_y_axis(rot),
                            surface_z_axis(rot)};
  return surface_quadrature(
      [&](double x, double y) {
        const Vector3d R = surface_to_defect_displacement(rot, x, y, c.z_def);
        // equal-probability axis orientation: average the three axis choices
        Vector3d sum = Vector3d::Zero();
        for (const auto& ax : axes) sum += dipole_field(k_e, ax, R).cwiseAbs2();
        return Vector3d(c.n_sd * c.dipole.mean_square_d / 3.0 * sum);
      },
      L, c.z_def);
}

Vector3d variance_surface_integral(const MagneticDipoleNoise& c, double L) {
  validate(c);
  if (!(L > 0.0)) throw std::invalid_argument("variance_surface_integral: L must be > 0");
  const double pref = cst::vacuum_permeability / (4.0 * cst::pi);
  const double mu = cst::moment_from_gyromagnetic(c.gamma_bath);
  const FrameRotation rot{c.theta};
  const Vector3d axes[3] = {surface_x_axis(rot), surface_y_axis(rot),
                            surface_z_axis(rot)};
  return surface_quadrature(
      [&](double x, double y) {
        const Vector3d R = surface_to_defect_displacement(rot, x, y, c.z_def);
        Vector3d sum = Vector3d::Zero();
        for (const auto& ax : axes) sum += dipole_field(pref, ax, R).cwiseAbs2();
        return Vector3d(c.n_sd * mu * mu / 3.0 * sum);
      },
      L, c.z_def);
}

Vector3d variance_surface_integral(const ChargedMotionNoise& c, double L) {
  validate(c);
  if (!(L > 0.0)) throw std::invalid_argument("variance_surface_integral: L must be > 0");
  const double pref = cst::vacuum_permeability * cst::elementary_charge / (4.0 * cst::pi);
  const double v2 = cst::boltzmann * c.T / c.m_star;  // per-component <v^2>
  // the drift-current variance is tilt-independent, so theta = 0 here
  return surface_quadrature(
      [&](double x, double y) {
        const Vector3d R_surf(x, y, c.z_def);
        Vector3d gx, gy;
        drift_basis_fields(pref, R_surf, 0.0, gx, gy);
        return Vector3d(c.n_s * v2 * (gx.cwiseAbs2() + gy.cwiseAbs2()));
      },
      L, c.z_def);
}

}  // namespace spindec
