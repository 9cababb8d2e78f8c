#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gheat::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kNumericalFailure = 3,
};

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gheat::cli
