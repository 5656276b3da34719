#pragma once

#include <iosfwd>

namespace sigman::cli {

/// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Parses argv, runs one subcommand and writes its JSON report to --out (or
/// `out`). Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigman::cli
