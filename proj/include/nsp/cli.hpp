#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kBudgetExceeded = 3,
};

/// Runs one subcommand (match, mine, keys, classify, lattice). `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsp::cli
