#pragma once

#include <ostream>
#include <span>
#include <string>

namespace wreath::cli {

/// Exit codes of run_command.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // identity failure or invalid mathematical input
inline constexpr int kUsage = 2;    // usage error, unknown identity or exhausted budget

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace wreath::cli
