#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhahn {

/// Exit codes: 0 success, 1 a verification check failed, 2 usage, parameter
/// or I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command (args exclude the program name). The report goes to the
/// configured output path or to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhahn
