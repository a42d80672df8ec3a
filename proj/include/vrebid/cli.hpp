#pragma once

#include <iosfwd>

namespace vrebid {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitInfeasible = 2, kExitAssertion = 3 };

/// Entry point of the command-line tool; writes reports to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vrebid
