#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>
#include <spindec/constants.hpp>

namespace spindec::cli {

using nlohmann::json;
namespace cst = constants;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config error at '" + where + "': " + what);
}

const json& member(const json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) fail(where + "." + key, "missing required field");
  return j[key];
}

double num(const json& j, const std::string& where, const std::string& key) {
  const json& v = member(j, where, key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<double>();
}

constexpr double deg = cst::pi / 180.0;
constexpr double per_cm2 = 1e4;   // 1/cm^2 -> 1/m^2
constexpr double per_cm3 = 1e6;   // 1/cm^3 -> 1/m^3

SpinCenterParams parse_defect(const json& j) {
  SpinCenterParams p;
  p.D = num(j, "defect", "D_GHz") * 1e9;
  p.gamma_par = num(j, "defect", "gamma_par_GHz_per_T") * 1e9;
  p.gamma_perp = num(j, "defect", "gamma_perp_GHz_per_T") * 1e9;
  p.d_perp = num(j, "defect", "d_perp_Hz_m_per_V");
  p.d_par = num(j, "defect", "d_par_Hz_m_per_V");
  p.d_prime = num(j, "defect", "d_prime_Hz_m_per_V");
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    fail("defect", e.what());
  }
  return p;
}

NoiseSource parse_source(const json& j, const std::string& where) {
  const std::string type = member(j, where, "type").get<std::string>();
  try {
    if (type == "surface_point_charge") {
      SurfacePointChargeNoise c;
      c.n_s = num(j, where, "n_s_per_cm2") * per_cm2;
      c.z_def = num(j, where, "z_def_nm") * 1e-9;
      c.theta = num_or(j, "theta_deg", 0.0) * deg;
      c.epsilon_r = num_or(j, "epsilon_r", 5.7);
      c.tau_p = num(j, where, "tau_p_ns") * 1e-9;
      if (j.contains("epsilon_ext")) c.epsilon_ext = j["epsilon_ext"].get<double>();
      validate(c);
      return c;
    }
    if (type == "surface_dipole") {
      SurfaceDipoleNoise c;
      c.n_sd = num(j, where, "n_sd_per_cm2") * per_cm2;
      c.z_def = num(j, where, "z_def_nm") * 1e-9;
      c.theta = num_or(j, "theta_deg", 0.0) * deg;
      c.epsilon_r = num_or(j, "epsilon_r", 5.7);
      const double d_rms = num(j, where, "d_rms_nm") * 1e-9;
      c.dipole.mean_square_d = d_rms * d_rms;
      c.dipole.omega_d = num_or(j, "omega_d_rad_per_s", 0.0);
      c.dipole.Gamma_d = num(j, where, "Gamma_d_per_s");
      if (j.contains("epsilon_ext")) c.epsilon_ext = j["epsilon_ext"].get<double>();
      validate(c);
      return c;
    }
    if (type == "magnetic_dipole") {
      MagneticDipoleNoise c;
      c.n_sd = num(j, where, "n_sd_per_cm2") * per_cm2;
      c.z_def = num(j, where, "z_def_nm") * 1e-9;
      c.theta = num_or(j, "theta_deg", 0.0) * deg;
      c.tau = num(j, where, "tau_ns") * 1e-9;
      c.delta_omega_mu = num_or(j, "delta_omega_mu_rad_per_s", 0.0);
      c.gamma_bath = num(j, where, "gamma_bath_GHz_per_T") * 1e9;
      validate(c);
      return c;
    }
    if (type == "charged_motion") {
      ChargedMotionNoise c;
      c.n_s = num(j, where, "n_s_per_cm2") * per_cm2;
      c.z_def = num(j, where, "z_def_nm") * 1e-9;
      c.T = num(j, where, "T_K");
      c.m_star = num_or(j, "m_star_me", 1.0) * cst::electron_mass;
      c.tau = num(j, where, "tau_fs") * 1e-15;
      validate(c);
      return c;
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where + ".type", "unknown noise source type '" + type + "'");
}

RateSet parse_rates(const json& j) {
  RateSet r;
  r.gamma_dperp_pm = num_or(j, "gamma_dperp_pm_per_s", 0.0);
  r.gamma_dprime_p0 = num_or(j, "gamma_dprime_p0_per_s", 0.0);
  r.gamma_dprime_m0 = num_or(j, "gamma_dprime_m0_per_s", 0.0);
  r.gamma_dpar_0 = num_or(j, "gamma_dpar_0_per_s", 0.0);
  r.gamma_gperp_p0 = num_or(j, "gamma_gperp_p0_per_s", 0.0);
  r.gamma_gperp_m0 = num_or(j, "gamma_gperp_m0_per_s", 0.0);
  r.gamma_gpar_0 = num_or(j, "gamma_gpar_0_per_s", 0.0);
  try {
    validate(r);
  } catch (const std::invalid_argument& e) {
    fail("rates", e.what());
  }
  return r;
}

SweepSpec parse_sweep(const json& j) {
  SweepSpec s;
  s.variable = member(j, "sweep", "variable").get<std::string>();
  if (s.variable == "Bz") {
    s.min = num(j, "sweep", "min_T");
    s.max = num(j, "sweep", "max_T");
  } else if (s.variable == "z_def") {
    s.min = num(j, "sweep", "min_nm") * 1e-9;
    s.max = num(j, "sweep", "max_nm") * 1e-9;
    s.log_scale = true;
  } else {
    fail("sweep.variable", "must be 'Bz' or 'z_def'");
  }
  if (j.contains("log")) s.log_scale = j["log"].get<bool>();
  s.points = static_cast<int>(num(j, "sweep", "points"));
  if (s.points < 2) fail("sweep.points", "need at least 2 points");
  if (!(s.max > s.min)) fail("sweep", "range must be ordered: max > min");
  if (!std::isfinite(s.min) || !std::isfinite(s.max)) fail("sweep", "range must be finite");
  if (j.contains("track_bath_splitting"))
    s.track_bath_splitting = j["track_bath_splitting"].get<bool>();
  return s;
}

PopulationsSpec parse_populations(const json& j) {
  PopulationsSpec p;
  const json& r0 = member(j, "populations", "rho0");
  if (!r0.is_array() || r0.size() != 3)
    fail("populations.rho0", "expected an array of three populations");
  for (int i = 0; i < 3; ++i) p.rho0(i) = r0[static_cast<size_t>(i)].get<double>();
  if (std::abs(p.rho0.sum() - 1.0) > 1e-9 || p.rho0.minCoeff() < 0.0)
    fail("populations.rho0", "populations must be nonnegative and sum to 1");
  p.t_max = num(j, "populations", "t_max_s");
  if (!(p.t_max > 0.0)) fail("populations.t_max_s", "must be > 0");
  p.points = static_cast<int>(num_or(j, "points", 200));
  if (p.points < 2) fail("populations.points", "need at least 2 points");
  return p;
}

McSpec parse_mc(const json& j) {
  McSpec m;
  m.n_s = num_or(j, "n_s_per_cm2", 2e12) * per_cm2;
  m.z_def = num_or(j, "z_def_nm", 25.0) * 1e-9;
  m.tau = num_or(j, "tau_ns", 10.0) * 1e-9;
  m.epsilon_r = num_or(j, "epsilon_r", 5.7);
  m.d_rms = num_or(j, "d_rms_nm", 0.5) * 1e-9;
  m.placements = static_cast<int>(num_or(j, "placements", 24));
  m.samples = static_cast<int>(num_or(j, "samples", 1200));
  m.realizations = static_cast<int>(num_or(j, "realizations", 400));
  if (j.contains("tau_generator_override_ns"))
    m.tau_generator_override = j["tau_generator_override_ns"].get<double>() * 1e-9;
  if (m.placements < 2 || m.samples < 16 || m.realizations < 10)
    fail("mc", "placements/samples/realizations too small");
  return m;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  if (!j.contains("version")) fail("version", "missing required field");
  cfg.version = j["version"].get<int>();
  if (cfg.version != 1) fail("version", "unsupported config version");

  if (j.contains("defect")) {
    cfg.defect = parse_defect(j["defect"]);
    cfg.has_defect = true;
  }
  if (j.contains("noise")) {
    const json& arr = j["noise"];
    if (!arr.is_array()) fail("noise", "expected an array of sources");
    for (size_t i = 0; i < arr.size(); ++i)
      cfg.noise.sources.push_back(
          parse_source(arr[i], "noise[" + std::to_string(i) + "]"));
  }
  if (j.contains("bulk")) {
    BulkNearNoise b;
    b.n_v = num(j["bulk"], "bulk", "n_v_per_cm3") * per_cm3;
    b.epsilon_r = num_or(j["bulk"], "epsilon_r", 5.7);
    validate(b);
    cfg.bulk = b;
  }
  if (j.contains("rates")) cfg.rates = parse_rates(j["rates"]);
  if (j.contains("Bz_T")) cfg.Bz = j["Bz_T"].get<double>();
  if (j.contains("sweep")) cfg.sweep = parse_sweep(j["sweep"]);
  if (j.contains("populations")) cfg.populations = parse_populations(j["populations"]);
  if (j.contains("mc")) cfg.mc = parse_mc(j["mc"]);
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();

  cfg.canonical = j.dump();
  return cfg;
}

}  // namespace spindec::cli
