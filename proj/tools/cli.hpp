#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyembed::cli {

/// Exit codes: 0 success, 1 a check or claim failed, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs `polyembed <args...>` (args excludes the program name). Files go to
/// --out-dir, else $POLYEMBED_OUT, else the working directory.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyembed::cli
