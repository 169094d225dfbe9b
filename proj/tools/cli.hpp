#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace latkit::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kInputError = 2, kResourceLimit = 3 };

/// Runs the command line `args` (without the program name). Output is
/// buffered and written only once the command has completed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latkit::cli
