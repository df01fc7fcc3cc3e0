#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgopo {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2 };

/// Runs one CLI invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `%.6g` rendering used for every CSV field.
std::string csv_number(double v);

}  // namespace hgopo
