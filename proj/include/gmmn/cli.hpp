#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gmmn::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kParseError = 2,
  kInvalidConfig = 3,
  kInternalError = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmmn::cli
