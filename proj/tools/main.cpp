#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dmojc/commands.hpp"

namespace {

using dmojc::io::RunConfig;

void add_shared_options(CLI::App* cmd, RunConfig& config,
                        std::string& config_path) {
  cmd->add_option("--dim", config.dim, "Spatial dimensionality (1, 2 or 3)")
      ->check(CLI::Range(1, 3));
  cmd->add_option("--branch", config.branch,
                  "3+1 degeneracy family: finite | infinite");
  cmd->add_option("--j", config.j, "Total angular momentum (half-integer)");
  cmd->add_option("--eta", config.eta, "First isospin-oscillator coupling");
  cmd->add_option("--chi", config.chi, "Second isospin coupling (extended)");
  cmd->add_option("--mc2", config.mc2, "Rest energy / first detuning");
  cmd->add_option("--gamma", config.gamma, "Field splitting / second detuning");
  cmd->add_option("--alpha", config.alpha, "Initial-state mixing angle");
  cmd->add_option("--tmax", config.t_max, "End of the time grid");
  cmd->add_option("--steps", config.t_steps, "Number of time samples");
  cmd->add_option("--nmax", config.nmax, "Oscillator truncation of the oracle");
  cmd->add_option("--max-n", config.max_n, "Spectrum cutoff (rows 0..max-n)");
  cmd->add_option("--format", config.format, "Output format: csv | json | svg");
  cmd->add_option("--output", config.output, "Output path ('-' for stdout)");
  cmd->add_option("--config", config_path,
                  "JSON config file; command-line flags take precedence")
      ->check(CLI::ExistingFile);
}

// The config file is applied before CLI11 parses the flags, so explicit
// flags override file values.
bool preload_config(int argc, char** argv, RunConfig& config,
                    std::string& error) {
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
    else
      continue;
    std::ifstream file(path);
    if (!file) {
      error = "cannot open config file: " + path;
      return false;
    }
    try {
      config.apply_json(dmojc::io::json::parse(file));
    } catch (const std::exception& e) {
      error = std::string("config file: ") + e.what();
      return false;
    }
  }
  return true;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dmojc: relativistic-oscillator / cavity-model simulation toolkit"};
  app.require_subcommand(1);
  app.footer("The environment variable DMOJC_SEED is reserved for future "
             "randomized grids and is currently unused.");

  RunConfig config;
  std::string config_path;
  std::string preload_err;
  if (!preload_config(argc, argv, config, preload_err)) {
    std::cerr << "error: " << preload_err << "\n";
    return dmojc::commands::kExitUsage;
  }

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Block spectra: analytic and numeric eigenvalues");
  CLI::App* evolve = app.add_subcommand(
      "evolve", "Time evolution of the extended model (populations, "
                "purities, concurrence)");
  CLI::App* cpplane = app.add_subcommand(
      "cpplane", "Concurrence-versus-purity trajectory and frontier");
  CLI::App* validate = app.add_subcommand(
      "validate", "Run the validation grid and emit the JSON report");
  CLI::App* map = app.add_subcommand(
      "map", "Print the cavity-model parameter identification table");
  for (CLI::App* cmd : {spectrum, evolve, cpplane, validate, map})
    add_shared_options(cmd, config, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dmojc::commands::kExitUsage;
  }

  try {
    if (spectrum->parsed()) return dmojc::commands::cmd_spectrum(config);
    if (evolve->parsed()) return dmojc::commands::cmd_evolve(config);
    if (cpplane->parsed()) return dmojc::commands::cmd_cpplane(config);
    if (validate->parsed()) return dmojc::commands::cmd_validate(config);
    if (map->parsed()) return dmojc::commands::cmd_map(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dmojc::commands::kExitUsage;
  }
  return dmojc::commands::kExitUsage;
}
