#pragma once

#include <stdexcept>
#include <string>

namespace relunet {

/// Parameter vector length does not match 3H+1, or H is zero.
class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (r < 1, c <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed piecewise-polynomial target.
class TargetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A brute-force reference hit a non-finite sample.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relunet
