#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nmoments::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (without the program name). Records go to out,
/// diagnostics to err. Returns 0 on success, 1 when `check` finds a
/// disagreement beyond tolerance, 2 on usage or precondition errors.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nmoments::cli
