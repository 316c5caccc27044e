#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clonekit::cli {

// Exit codes: 0 every check passed, 1 some check failed, 2 usage or input error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clonekit::cli
