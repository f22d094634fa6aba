#pragma once

#include <string>
#include <vector>

namespace sqfn {

// Exit codes: 0 success, 2 validation error, 3 experiment-declared failure,
// 64 unknown subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitExperimentFailed = 3;
inline constexpr int kExitUsage = 64;

/// Runs one CLI invocation (args exclude the program name).
int run_cli(const std::vector<std::string>& args);

}  // namespace sqfn
