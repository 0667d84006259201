#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aperiodica::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verdict = 1;  // a check ran and failed (golden mismatch, methods disagree)
inline constexpr int exit_usage = 2;    // bad flags, unreadable or invalid input

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aperiodica::cli
