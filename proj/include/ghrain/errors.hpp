#pragma once

#include <stdexcept>
#include <string>

namespace ghrain {

/// Bad user configuration (CLI exit code 2).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input data (CLI exit code 3).
struct data_error : std::runtime_error {
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-convergence, overflow, invalid parameter region
/// (CLI exit code 4).
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ghrain
