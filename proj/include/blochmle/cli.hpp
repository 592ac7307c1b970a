#pragma once

// The bloch-mle command line. Exit codes: 0 success, 1 failed invariant check,
// 2 invalid input or usage, 3 numerical failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace blochmle {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// `args` excludes the program name. `in` backs "--in -" and a missing --in.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace blochmle
