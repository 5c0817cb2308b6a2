#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relunet/experiment/commands.hpp"
#include "relunet/experiment/config.hpp"

using namespace relunet::experiment;

int main(int argc, char** argv) {
  CLI::App app{"Shallow ReLU network risk, gradient and training experiments"};
  std::string command;
  std::string config_path;
  std::string output;
  std::optional<std::uint64_t> seed;
  const auto commands = CLI::IsMember({"risk", "grad", "train", "flow", "sweep", "verify"});
  app.add_option("command,--command", command,
                 "risk | grad | train | flow | sweep | verify (else the config's \"command\")")
      ->check(commands);
  app.add_option("--config", config_path, "JSON experiment description");
  app.add_option("--output", output, "CSV destination (stdout when omitted)");
  app.add_option("--seed", seed, "overrides the seed in the config");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  }
  if (command.empty() && cfg.command) command = *cfg.command;
  if (command.empty()) {
    std::cerr << "no command given\n";
    return kExitConfig;
  }
  if (config_path.empty() && command != "verify") {
    std::cerr << "--config is required for " << command << '\n';
    return kExitConfig;
  }
  if (!output.empty()) cfg.output = output;
  if (seed) {
    cfg.seed = *seed;
    if (cfg.random_init) cfg.random_init->seed = *seed;
  }
  return run_command(command, cfg, std::cout, std::cerr);
}
