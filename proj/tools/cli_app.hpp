#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace capra::cli {

inline constexpr const char* kSchemaVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,           // internal error, or `check` found a violation
  kValidationError = 2,
  kNonConvergence = 3,
};

/// Runs the command line `args` (without the program name). JSON or CSV goes
/// to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capra::cli
