#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace comlim::cli {

/// Runs the command line given argv-style arguments (without the program
/// name). Returns the process exit code: 0 success, 1 error or oracle
/// discrepancy, 2 when regularity-gated results were omitted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace comlim::cli
