#pragma once

// Run configuration: a versioned JSON document with units embedded in the
// key names (z_def_nm, tau_p_ns, ...) so every value converts to SI exactly
// once, here.

#include <spindec/noise.hpp>
#include <spindec/rates.hpp>
#include <spindec/spin_center.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spindec::cli {

struct SweepSpec {
  std::string variable;  // "Bz" | "z_def" | "t"
  double min = 0.0;      // SI
  double max = 0.0;
  int points = 0;
  bool log_scale = false;
  bool track_bath_splitting = false;
};

struct PopulationsSpec {
  Eigen::Vector3d rho0 = {0.0, 0.0, 1.0};
  double t_max = 0.0;
  int points = 0;
};

struct McSpec {
  double n_s = 1e15;          // 1/m^2
  double z_def = 25e-9;       // m
  double tau = 1e-8;          // s
  double epsilon_r = 5.7;
  double d_rms = 0.5e-9;      // m
  int placements = 24;
  int samples = 1200;
  int realizations = 400;
  // negative-control knob: generator runs at this correlation time while the
  // analytic reference keeps `tau`
  std::optional<double> tau_generator_override;
};

struct RunConfig {
  int version = 1;
  SpinCenterParams defect = SpinCenterParams::nv();
  bool has_defect = false;
  NoiseStack noise;
  std::optional<BulkNearNoise> bulk;
  std::optional<RateSet> rates;   // direct-rate mode for population runs
  std::optional<double> Bz;       // static field when not sweeping it
  std::optional<SweepSpec> sweep;
  std::optional<PopulationsSpec> populations;
  McSpec mc;
  std::uint64_t seed = 0;

  std::string canonical;  ///< normalized serialization, hashed into outputs
};

/// Parse and validate a config file.  Throws ConfigError with a field path
/// on any problem.
RunConfig load_config(const std::string& path);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spindec::cli
