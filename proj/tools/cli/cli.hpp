#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tfse_cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumerical = 3 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfse_cli
