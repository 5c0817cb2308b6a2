#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relunet/flow.hpp"
#include "relunet/gd_trainer.hpp"
#include "relunet/layout.hpp"
#include "relunet/mollified.hpp"
#include "relunet/target.hpp"

namespace relunet::experiment {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RandomInit {
  double c = 1.0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCommands[] = {"risk", "grad", "train", "flow", "sweep", "verify"};
bool is_command(const std::string& name);

enum class VerifyScale { Small, Full };

/// Parsed JSON experiment description. See docs/config.md for the schema.
struct ExperimentConfig {
  std::optional<std::string> command;
  std::optional<std::size_t> hidden;
  Target target = Target::constant(0.0);
  std::optional<std::vector<double>> phi0;
  std::optional<RandomInit> random_init;
  std::optional<double> gamma;
  std::optional<Gate> gate;
  std::size_t max_steps = 10000;
  double risk_tol = 1e-10;
  double T = 10.0;
  double h = 1e-3;
  FlowMethod method = FlowMethod::RK4;
  std::vector<double> r_values;
  QuadratureConfig quadrature;
  std::optional<std::string> output;
  std::uint64_t seed = 42;
  VerifyScale scale = VerifyScale::Small;

  /// Explicit phi0, or the uniform draw on [-c, c]^{3H+1} from trial 0 of
  /// random_init.seed. Throws ConfigError when neither is present.
  ParamVector initial_point() const;
  /// Explicit gamma or gate; ConfigError when neither is present.
  LearningRate learning_rate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
/// Reads and parses a file; an unreadable file is a ConfigError.
ExperimentConfig load_config(const std::string& path);

}  // namespace relunet::experiment
