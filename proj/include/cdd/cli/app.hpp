#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,  // check found a disagreement
  kExitUsage = 2,     // bad flags, unreadable or malformed input
  kExitInfeasible = 3,
};

// Entry point of the cdd tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdd::cli
