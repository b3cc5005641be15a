#pragma once

#include <ostream>

namespace hw {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // verify-bound: some cell violates the strong bound
    kExitUsage = 2,    // bad flags or inputs outside an operation's domain
    kExitNumerical = 3,
};

/// Entry point of `hwtheta`; subcommands eval, sweep-delta, delta-prime, series, verify-bound.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hw
