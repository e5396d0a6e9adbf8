#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homdist::cli {

enum ExitCode : int {
  kSuccess = 0,
  kPropertyFalsified = 1,
  kUsageError = 2,
  kStabilityFailure = 3,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homdist::cli
