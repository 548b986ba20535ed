#pragma once

// Command implementations behind the gaudin CLI. Kept out of main() so the
// test suite can drive them in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace gaudin::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kNonConvergence = 2, kConfigError = 3 };

/// Malformed or unknown configuration content; the message names the key.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 20240601;
  int cap_m = 12;
  std::optional<double> tol;
  bool timings = false;
  /// Debug: evaluate predictions with the off-diagonal kernel sign flipped.
  bool flip_offdiagonal = false;
};

struct CommandResult {
  int exit_code = kPass;
  Json report;
};

/// Built-in configuration used when --config is not given.
Json default_config(const std::string& command);

CommandResult run_solve(const Json& config, const GlobalOptions& opts);
CommandResult run_verify(const Json& config, const GlobalOptions& opts);
CommandResult run_dwbc(const Json& config, const GlobalOptions& opts);
CommandResult run_props(const Json& config, const GlobalOptions& opts);
CommandResult run_norm(const Json& config, const GlobalOptions& opts);

/// Full CLI: parses arguments (argv[0] excluded), runs, writes the report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaudin::cli
