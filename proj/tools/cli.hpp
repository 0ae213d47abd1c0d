#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rhumbforge::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // I/O and other unexpected errors
  kValidation = 2,  // bad flags, configs, expressions, irregular surfaces
  kNumerical = 3,   // singularities, step underflow, failed invariants
};

/// Runs the `rhumbforge` command line. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rhumbforge::cli
