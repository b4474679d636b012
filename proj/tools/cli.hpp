#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace htriv::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kComputation = 2, kUsage = 3 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace htriv::cli
