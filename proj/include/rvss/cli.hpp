#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rvss {

enum ExitStatus : int {
  kExitOk = 0,
  kExitDomainError = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Runs the `rvss` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rvss
