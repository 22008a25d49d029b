#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dikin::cli {

/// Exit codes of the `dikin` tool.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kRuntime = 3 };

/// Runs the tool with `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`; files named by flags are written directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dikin::cli
