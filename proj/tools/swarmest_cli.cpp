#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "swarmest/config.hpp"
#include "swarmest/errors.hpp"
#include "swarmest/runner.hpp"

namespace {

constexpr int kConfigErrorExit = 2;
constexpr int kRuntimeErrorExit = 3;

struct Command {
  CLI::App* app = nullptr;
  swarmest::Scenario scenario = swarmest::Scenario::Full;
  bool sweep = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm estimation simulator: dispersion, consensus and contour capturing experiments"};
  app.require_subcommand(1);
  app.footer(
      "Any configuration key can be given as --key value (or --key=value); '-' and '_' are interchangeable.\n"
      "Precedence: command line > config file > built-in defaults.\n"
      "Output directory: --out-dir, else $SWARMEST_OUT_DIR, else the current directory.\n"
      "Exit codes: 0 success, 2 configuration error, 3 runtime error.");

  std::string config_path;
  bool print_config = false;
  std::vector<Command> commands;
  auto add = [&](const char* name, const char* help, swarmest::Scenario scenario, bool sweep) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->allow_extras();
    sub->add_option("-c,--config", config_path, "flat key = value config file");
    sub->add_flag("--print-config", print_config, "print the resolved config and exit");
    commands.push_back({sub, scenario, sweep});
  };
  add("disperse", "dispersion (or diffusion with --walk diffusion) runs, one CSV per seed",
      swarmest::Scenario::Disperse, false);
  add("consensus-static", "consensus on frozen random geometric graphs over a range-ratio sweep",
      swarmest::Scenario::ConsensusStatic, false);
  add("full", "dispersion, averaging and contour capturing", swarmest::Scenario::Full, false);
  add("control", "no-communication control: diffusion, running mean, then contour capturing",
      swarmest::Scenario::Control, false);
  add("sweep", "Cartesian parameter grid (--grid 'key=a,b;key2=c') over --scenario, mean and sd per point",
      swarmest::Scenario::Full, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigErrorExit;
  }

  try {
    const Command* cmd = nullptr;
    for (const auto& c : commands) {
      if (c.app->parsed()) cmd = &c;
    }
    swarmest::ExperimentConfig config;
    if (!cmd->sweep) config.scenario = cmd->scenario;
    if (!config_path.empty()) swarmest::apply_config_file(config, config_path);
    const auto overrides = swarmest::parse_override_tokens(cmd->app->remaining());
    swarmest::apply_overrides(config, overrides);
    if (!cmd->sweep) {
      for (const auto& [k, v] : overrides) {
        if (swarmest::normalize_key(k) == "scenario" && swarmest::parse_scenario(v) != cmd->scenario) {
          throw swarmest::ConfigError("scenario", fmt::format("'{}' conflicts with the '{}' subcommand", v,
                                                              swarmest::to_string(cmd->scenario)));
        }
      }
      config.scenario = cmd->scenario;
    }

    if (print_config) {
      std::cout << swarmest::serialize_config(config);
      return 0;
    }
    const swarmest::RunReport report =
        cmd->sweep ? swarmest::run_sweep_experiment(config) : swarmest::run_experiment(config);
    for (const auto& f : report.files) std::cout << f.string() << '\n';
    std::cerr << fmt::format("done in {:.2f} s\n", report.wall_time_s);
    return 0;
  } catch (const swarmest::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeErrorExit;
  }
}
