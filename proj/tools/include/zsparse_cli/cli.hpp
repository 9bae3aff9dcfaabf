// Command-line front end. Everything runs in-process so the corpus runner and
// the tests can drive it without spawning processes.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsparse::cli {

inline constexpr const char* kSchema = "zsparse.report/1";

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a shell-style command line (double quotes group words).
std::vector<std::string> split_command_line(const std::string& line);

}  // namespace zsparse::cli
