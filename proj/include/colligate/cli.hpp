#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace colligate::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 1,  ///< verdict false, or residual above tolerance
  kBadInput = 2,  ///< malformed input or violated precondition
};

/// Runs one command line (args excludes the program name). The report
/// document goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace colligate::cli
