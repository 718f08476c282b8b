#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treesearch::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kResource = 3, kCheckFailed = 4 };

/// Runs one command line (args excludes the program name). Regular output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treesearch::cli
