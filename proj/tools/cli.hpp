#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumsetlab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDisagreement = 2,
  kBudget = 3,
};

/// Runs the command line `args` (without the program name), writing the
/// report to `out` (or the --out file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumsetlab::cli
