// spindec: analytic and Monte Carlo toolkit for near-surface spin-1 defect
// decoherence.  Subcommands: populations, rates-sweep, noise-vs-depth,
// fit-depth, mc-verify.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace spindec::cli;

int main(int argc, char** argv) {
  CLI::App app{"spin-1 defect decoherence: rates, dynamics and noise models"};
  app.require_subcommand(1);

  std::string config_path;
  GlobalOptions opt;
  std::uint64_t seed_value = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "JSON run configuration");
    if (needs_config) c->required();
    sub->add_option("--out", opt.out_dir, "output directory (default: .)");
    sub->add_option("--seed", seed_value, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", opt.threads, "worker threads for sweeps and ensembles");
    sub->add_flag("--fixed-step", opt.fixed_step,
                  "fixed-step integration for byte-stable output");
  };

  auto* populations = app.add_subcommand(
      "populations", "analytic + numeric level populations against time");
  add_common(populations, true);

  auto* rates_sweep = app.add_subcommand(
      "rates-sweep", "channel rates and T1/T2 against the axial field");
  add_common(rates_sweep, true);

  auto* noise_depth = app.add_subcommand(
      "noise-vs-depth", "per-source field amplitudes against defect depth");
  add_common(noise_depth, true);

  auto* fit_depth =
      app.add_subcommand("fit-depth", "power-law fits of a depth/T2 CSV");
  std::string fit_input;
  std::optional<double> fixed_n;
  double fixed_n_value = 0.0;
  bool with_floor = false;
  fit_depth->add_option("--input", fit_input, "CSV with header z_nm,T2_us[,sigma_us]")
      ->required();
  auto* fixed_n_opt =
      fit_depth->add_option("--fixed-n", fixed_n_value, "additionally fit this fixed exponent");
  fit_depth->add_flag("--offset", with_floor,
                      "allow a constant decay-rate floor in the requested model");
  add_common(fit_depth, false);

  auto* mc_verify = app.add_subcommand(
      "mc-verify", "Monte Carlo / quadrature verification of the analytic models");
  std::string dump_path;
  auto* dump_opt = mc_verify->add_option("--dump-series", dump_path,
                                         "write the probe time series (binary)");
  add_common(mc_verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (seed_given) opt.seed = seed_value;

  try {
    if (app.got_subcommand(fit_depth)) {
      if (fixed_n_opt->count() > 0) fixed_n = fixed_n_value;
      return cmd_fit_depth(fit_input, fixed_n, with_floor, opt);
    }

    const RunConfig cfg = load_config(config_path);
    if (app.got_subcommand(populations)) return cmd_populations(cfg, opt);
    if (app.got_subcommand(rates_sweep)) return cmd_rates_sweep(cfg, opt);
    if (app.got_subcommand(noise_depth)) return cmd_noise_vs_depth(cfg, opt);
    if (app.got_subcommand(mc_verify)) {
      std::optional<std::string> dump;
      if (dump_opt->count() > 0) dump = dump_path;
      return cmd_mc_verify(cfg, opt, dump);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
