#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dynaflow::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kUnsupported = 2,
  kBudgetExceeded = 3,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`; files named "-" use stdin/stdout.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynaflow::cli
