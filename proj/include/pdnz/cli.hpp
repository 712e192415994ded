#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdnz {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitViolation = 1,  // compliance violation or failed verification
    kExitUsage = 2,      // bad arguments, unreadable or invalid config
    kExitNumerical = 3,  // numerical failure
};

/// Entry point of the `pdnz` tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdnz
