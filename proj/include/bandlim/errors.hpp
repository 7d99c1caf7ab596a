#pragma once

#include <stdexcept>
#include <string>

namespace bandlim {

// Exit-code contract used by the CLI:
//   0 success, 1 usage/config, 2 frame check negative, 3 not recoverable,
//   4 numeric failure.
enum class ExitCode : int {
  Success = 0,
  Usage = 1,
  FrameNegative = 2,
  NotRecoverable = 3,
  NumericFailure = 4,
};

// Bad user input: malformed config, invalid parameter combinations,
// out-of-domain arguments.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation
// (e.g. a frequency not reduced to the fundamental cell).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Operation requested on parameters it does not support
// (e.g. closed-form duals for a channel count other than two).
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// A linear solve hit a condition number beyond the configured threshold.
struct IllConditionedError : std::runtime_error {
  explicit IllConditionedError(const std::string& msg) : std::runtime_error(msg) {}
};

// A quadrature failed to reach the requested tolerance.
struct AccuracyError : std::runtime_error {
  explicit AccuracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// The recovery operator is singular for the requested missing set.
struct NotRecoverableError : std::runtime_error {
  explicit NotRecoverableError(const std::string& msg) : std::runtime_error(msg) {}
};

// A decision procedure could reach no verdict either way.
struct UndecidableError : std::runtime_error {
  explicit UndecidableError(const std::string& msg) : std::runtime_error(msg) {}
};

// Sample data inconsistent with the requested operation
// (e.g. reconstructing from a set that still has masked entries).
struct SampleConsistencyError : std::runtime_error {
  explicit SampleConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bandlim
