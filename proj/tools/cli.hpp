#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mixsn::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

/// Runs one command line (without the program name). Output records go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixsn::cli
