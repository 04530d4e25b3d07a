#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace ktoric::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidPolytope = 1,
  kParseError = 2,
  kCheckFailed = 3,
};

/// Runs the command line with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ktoric::cli
