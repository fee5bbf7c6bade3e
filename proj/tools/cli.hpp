#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pmod::cli {

/// Exit codes: 0 success/accepted, 1 rejected or does-not-exist, 2 input or
/// parameter error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_rejected = 1;
inline constexpr int exit_error = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pmod::cli
