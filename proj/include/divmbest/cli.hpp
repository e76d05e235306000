#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divmbest {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalid = 2,
  kExitNotSubmodular = 3,
  kExitNotConcave = 4,
  kExitBudget = 5,
  kExitState = 6,
};

/// Runs the driver; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divmbest
