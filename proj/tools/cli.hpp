#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfs::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,        // unexpected error, or a verification that did not hold
  kInputError = 2,     // bad flags, malformed files, guard violations
  kUnreachableK = 3,
  kNonMonotone = 4,
};

/// Runs one subcommand. args[0] is the program name. Artifacts without
/// --out go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfs::cli
