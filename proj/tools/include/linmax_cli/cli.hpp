#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linmax::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,
  kRefused = 2,
  kThresholdsFailed = 3,
};

/// Runs `linmax <args...>` (args excludes the program name) and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linmax::cli
