#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mxl {

/// Exit codes shared by every subcommand.
enum ExitCode { kExitVerified = 0, kExitUsage = 1, kExitRefuted = 2, kExitInconclusive = 3 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mxl
