#pragma once

#include <stdexcept>
#include <string>

#include "lidtest/report.hpp"

namespace lidtest::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Config file contents with command-line overrides already applied.
struct RunConfig {
  std::string command;
  json cfg;
  std::string base_dir;  // strategy paths resolve against this
  int workers = 1;
};

/// {"command", "config", "version", "result"}; throws ConfigError,
/// StrategyInvalid or GuardExceeded for the documented exit codes.
json run_command(const RunConfig& rc);

}  // namespace lidtest::cli
