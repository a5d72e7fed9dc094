#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ibdt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ibdt::cli
