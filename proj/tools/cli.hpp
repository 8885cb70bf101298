#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussfactor::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternalError = 1,
    kValidationError = 2,
    kScanRefused = 3,
    kInvariantBreach = 4,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussfactor::cli
