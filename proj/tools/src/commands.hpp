#pragma once

#include <optional>
#include <string>

#include "config.hpp"

namespace spindec::cli {

// exit codes shared with main(): 0 ok, 2 config error, 3 numerical failure,
// 4 verification gate failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

struct GlobalOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  ///< overrides the config seed
  int threads = 1;
  bool fixed_step = false;
};

int cmd_populations(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_rates_sweep(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_noise_vs_depth(const RunConfig& cfg, const GlobalOptions& opt);
int cmd_fit_depth(const std::string& input_csv, std::optional<double> fixed_n,
                  bool with_floor, const GlobalOptions& opt);
int cmd_mc_verify(const RunConfig& cfg, const GlobalOptions& opt,
                  const std::optional<std::string>& dump_series_path);

}  // namespace spindec::cli
