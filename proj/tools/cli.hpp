#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lochmf::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kBadInput = 2, kInfeasible = 3 };

inline constexpr const char* kGridHeader = "# lochmf grid csv v1";

// Parses argv and dispatches; all output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lochmf::cli
