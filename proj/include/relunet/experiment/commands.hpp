#pragma once

#include <iosfwd>
#include <string>

#include "relunet/experiment/config.hpp"

namespace relunet::experiment {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitUncertified = 3,
  kExitDivergence = 4,
  kExitIo = 5,
};

/// Runs one of risk | grad | train | flow | sweep | verify.
///
/// The CSV goes to cfg.output when set (written atomically) and to `out`
/// otherwise; summary lines go to `out` in the first case and to `err` in
/// the second, so stdout stays parseable. Never throws; failures map to the
/// exit codes above with a message on `err`.
int run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace relunet::experiment
