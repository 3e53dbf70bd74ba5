#pragma once

#include <ostream>

namespace oraclesim {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitPromiseViolation = 3,
};

/// Entry point of the `oraclesim` tool; writes normal output to `out` and
/// diagnostics to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace oraclesim
