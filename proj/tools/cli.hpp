#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hsets::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInputError = 2, kResourceCap = 3 };

/// Runs the command line `args` (without the program name), writing results
/// to `out` (or the --out file) and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsets::cli
