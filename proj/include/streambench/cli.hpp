#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace streambench::cli {

/// Exit codes are a stable contract.
enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Entry point: `streambench {run,fit,selftest} ...`.
int run(int argc, char** argv);

/// Same as above with the program name omitted from `args` and explicit streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace streambench::cli
