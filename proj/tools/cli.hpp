#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trabound::cli {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the tool on `args` (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip text of v rounded to 10 significant digits.
std::string format_number(double v);

}  // namespace trabound::cli
