#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpeg::cli {

enum Status : int {
    kOk = 0,
    kNegative = 1, // not an LPEG, not equivalent, no match
    kUsage = 2,    // bad flags or unreadable input
    kResource = 3, // a budget was exceeded
};

/// Runs one command line. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lpeg::cli
