#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace deloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitUsage = 64;

// Parses argv (program name first), runs one subcommand and writes the report
// to --out or to `out`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deloc::cli
