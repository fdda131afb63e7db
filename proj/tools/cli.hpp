#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtmf::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { ok = 0, usage = 2, size_guard = 3 };

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtmf::cli
