#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fpme {

// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRefuted = 2, kExitNumerical = 3 };

// Runs one command line (args excludes the program name). table_default
// selects the aligned table output when --format is not given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool table_default = false);

}  // namespace fpme
