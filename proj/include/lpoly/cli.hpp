#pragma once

#include <iosfwd>

namespace lpoly {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitBoundFailure = 1, kExitUsage = 2 };

/// Entry point of the `lpoly` tool; streams are injectable for tests.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lpoly
