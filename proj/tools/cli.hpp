#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hfrac::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, solver_failure = 3 };

/// Runs `hfrac <args...>` (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hfrac::cli
