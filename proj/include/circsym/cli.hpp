#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circsym {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitScope = 2, kExitNumerical = 3 };

/// Runs the tool with `args` (program name excluded), writing summaries to out and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circsym
