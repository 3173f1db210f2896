#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsvi::cli {

/// Exit codes: 0 success, 1 arbitrage found (or density on an arbitrageable slice), 2 bad configuration.
enum ExitCode : int { kOk = 0, kArbitrage = 1, kConfig = 2 };

/// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsvi::cli
