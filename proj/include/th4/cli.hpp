#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace th4::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParseError = 2,
  kUsageError = 3,
  kNotConverged = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace th4::cli
