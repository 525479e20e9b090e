#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gridqos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the gridqos command line. `args` excludes the program name.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridqos::cli
