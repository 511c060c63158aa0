#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace simplexgeo::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Entry point of the command-line tool. `args` excludes the program name.
/// Subcommands: verify, suite, table. Returns 0 on pass, 1 on a statistical
/// failure, 2 on a usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simplexgeo::cli
