#pragma once

#include <iosfwd>

namespace koszulhh::cli {

/// Exit codes of the tool.
enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kCapExceeded = 3 };

/// Parses argv, runs one command and returns its exit code. Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace koszulhh::cli
