#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ciso::cli {

/// Exit codes: 0 success, 1 domain negative (not found, check failed), 2 usage or parse error.
enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ciso::cli
