#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discordlab::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsageError = 2,
  kInvalidState = 3,
  kViolation = 4,
};

/// Runs one command line. `args` excludes the program name. Results go to
/// `out` (or the files named by --out), diagnostics to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace discordlab::cli
