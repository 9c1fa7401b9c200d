#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cloudsig::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kSolverFailure = 3,
  kSingularity = 4,
};

// Runs one command. `args` excludes the program name. Results go to files
// named by --out or to `out`; key=value diagnostics go to `out`, warnings and
// errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cloudsig::cli
