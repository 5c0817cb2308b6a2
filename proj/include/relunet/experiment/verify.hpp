#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relunet/experiment/config.hpp"
#include "relunet/experiment/csv.hpp"

namespace relunet::experiment {

struct SuiteResult {
  std::string suite;
  std::string anchor;  // the identity or bound being certified
  std::size_t instances = 0;
  double worst = 0.0;      // largest violation measure seen
  double threshold = 0.0;  // pass iff worst <= threshold
  bool pass = false;
};

/// Randomized invariant suites over every numerical module, driven only by
/// `seed`. Results contain no timings, so identical seeds give identical
/// tables.
std::vector<SuiteResult> run_verification(std::uint64_t seed, VerifyScale scale);

CsvTable verification_table(const std::vector<SuiteResult>& results);

}  // namespace relunet::experiment
