#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entrokit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitViolation = 3;

/// Runs the command line `args` (without the program name). Results go to
/// `out` only when the exit code is 0; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrokit
