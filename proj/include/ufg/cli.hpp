#pragma once

#include <iosfwd>

namespace ufg {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNotFound = 1,  // no hyperbolic element / elementary group / a check did not pass
  kExitInvalid = 2,   // unreadable or malformed input, bad flags
  kExitBudget = 3,    // memory or element-size budget exhausted
  kExitInternal = 4,  // a soundness check inside the library tripped
};

// Runs one command as the `ufg` executable would. Reports go to `out`,
// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ufg
