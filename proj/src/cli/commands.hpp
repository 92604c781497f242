#pragma once

// Entry point of the s2hull command-line tool, parameterised on its streams.

#include <iosfwd>

namespace s2hull::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Parses arguments, runs one subcommand over `in` and returns the exit code.
/// The -i/--input option, when given, replaces `in` with a file.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace s2hull::cli
