// Command-line driver: figure-reproduction subcommands emitting CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmd2d/commands.hpp"
#include "mmd2d/errors.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

unsigned threads_from_env() {
  const char* env = std::getenv("MMWAVE_D2D_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return static_cast<unsigned>(std::stoul(env));
  } catch (const std::exception&) {
    throw mmd2d::cli::ConfigError("MMWAVE_D2D_THREADS must be a non-negative integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmWave D2D coverage under beam-alignment error: analytic and Monte Carlo engines"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::vector<std::string> settings;
  std::vector<std::string> model_specs;
  std::string seed, engine, error, eps0, s2, gamma;

  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--seed", seed, "Master seed (u64)");
  app.add_option("--engine", engine, "analytic | sim | both");
  app.add_option("--error", error, "perfect | uniform | gaussian");
  app.add_option("--eps0", eps0, "Error bound: radians, 'Xpi' or 'Xdeg'");
  app.add_option("--s2", s2, "Gaussian error variance (rad^2)");
  app.add_option("--gamma", gamma, "SINR threshold grid lo:hi:step in dB");
  app.add_option("--model", model_specs,
                 "Error model (repeatable): perfect | uniform:<eps0> | gaussian:<s2>:<eps0>");
  app.add_option("--set", settings, "Override any config key (repeatable): key=value");
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");

  struct Sub {
    const char* name;
    const char* help;
    mmd2d::cli::Command command;
  };
  const Sub subs[] = {
      {"coverage", "Coverage probability vs SINR threshold", mmd2d::cli::Command::coverage},
      {"gain-cdf", "Misaligned antenna gain CDF, closed form vs empirical",
       mmd2d::cli::Command::gain_cdf},
      {"interference-cdf", "Aggregate interference CDF with and without alignment error",
       mmd2d::cli::Command::interference_cdf},
      {"distance-sweep", "Coverage probability vs link distance",
       mmd2d::cli::Command::distance_sweep},
      {"calibrate-los", "Estimate the LOS fraction p_L from the blockage model",
       mmd2d::cli::Command::calibrate_los},
  };
  std::vector<std::pair<CLI::App*, mmd2d::cli::Command>> commands;
  for (const auto& s : subs) commands.emplace_back(app.add_subcommand(s.name, s.help), s.command);

  CLI11_PARSE(app, argc, argv);

  try {
    mmd2d::cli::RunConfig config;
    if (!config_path.empty()) config = mmd2d::cli::parse_config_file(config_path);
    auto set = [&config](const char* key, const std::string& value) {
      if (!value.empty()) mmd2d::cli::apply_setting(config, key, value);
    };
    for (const auto& kv : settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw mmd2d::cli::ConfigError("--set expects key=value, got '" + kv + "'");
      mmd2d::cli::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!model_specs.empty()) {
      std::string joined;
      for (const auto& m : model_specs) joined += (joined.empty() ? "" : ";") + m;
      mmd2d::cli::apply_setting(config, "models", joined);
    }
    set("seed", seed);
    set("engine", engine);
    set("error", error);
    set("eps0", eps0);
    set("s2", s2);
    set("gamma_db_range", gamma);
    config.validate();

    const unsigned threads = threads_from_env();
    std::string csv;
    for (const auto& [sub, command] : commands) {
      if (!sub->parsed()) continue;
      switch (command) {
        case mmd2d::cli::Command::coverage: csv = mmd2d::cli::cmd_coverage(config, threads); break;
        case mmd2d::cli::Command::gain_cdf: csv = mmd2d::cli::cmd_gain_cdf(config, threads); break;
        case mmd2d::cli::Command::interference_cdf:
          csv = mmd2d::cli::cmd_interference_cdf(config, threads);
          break;
        case mmd2d::cli::Command::distance_sweep:
          csv = mmd2d::cli::cmd_distance_sweep(config, threads);
          break;
        case mmd2d::cli::Command::calibrate_los:
          csv = mmd2d::cli::cmd_calibrate_los(config, threads);
          break;
      }
    }

    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw mmd2d::cli::ConfigError("cannot open output file '" + out_path + "'");
      out << csv;
    }
    return 0;
  } catch (const mmd2d::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const mmd2d::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const mmd2d::ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kExitNumerical;
  }
}
