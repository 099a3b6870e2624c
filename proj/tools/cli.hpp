#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace morera::cli {

enum ExitCode : int {
  kOk = 0,
  kNegativeVerdict = 1,  // morera-failure or inconsistent
  kConfigError = 2,
  kInconclusive = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace morera::cli
