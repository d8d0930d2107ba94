#pragma once

#include <iosfwd>

namespace boolfilter {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitRuntime = 2,
    kExitVerification = 3,
};

/// Entry point for `boolfilter <graphgen|run|verify|bench> ...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace boolfilter
