#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alphaidx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alphaidx::cli
