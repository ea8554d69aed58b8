#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mspiral::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kNumericError = 3,
};

/// Runs the command line `args` (without the program name). Paths equal to "-"
/// read from `in` or write to `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mspiral::cli
