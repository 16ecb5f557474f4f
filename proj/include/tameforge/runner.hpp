#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tameforge/numerics.hpp"

namespace tameforge {

inline constexpr const char* kVersion = TAMEFORGE_VERSION;

/// Invalid run configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One invocation. Unset optionals take the command's default.
struct RunConfig {
  std::string command;
  std::optional<int> k;
  std::uint64_t seed = 1;
  /// "identity", "random" or a comma-separated list of positive integers.
  std::string injection = "identity";
  std::optional<int> range;
  std::optional<double> tol;
  std::string mode = "corrected";
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> points;
  double eps = 0.5;
  double growth = 2.0;
  std::string preset = "kr-cubic";
  /// Variety as {"n", "a", "b"}; replaces the preset when set.
  std::optional<nlohmann::json> variety;
};

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

const std::vector<std::string>& run_commands();

/// Runs the construction and its verifier battery. Throws ConfigError for an
/// invalid config; construction errors are caught into the report's "error"
/// object with exit code 1. Exit code 0 iff every check not marked
/// expected_fail passes. The report is a pure function of the config.
RunResult run(const RunConfig& config, const ToleranceConfig& base = {});

/// ToleranceConfig with residual_tol taken from TAMEFORGE_TOL when set.
/// Throws ConfigError for an unparsable value.
ToleranceConfig tolerance_from_env();

}  // namespace tameforge
