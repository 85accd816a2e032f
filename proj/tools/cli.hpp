#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bellrobust::cli {

/// Exit statuses of the bell-robust tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidInput = 2,
  kSolverFailure = 3,
  kLimitExceeded = 4,
};

/// Runs the tool on `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace bellrobust::cli
