#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcv::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kInternalError = 2 };

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcv::cli
