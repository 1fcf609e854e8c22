#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lsqprice::cli {

enum ExitCode : int {
  kOk = 0,
  kExampleFailed = 1,
  kParseError = 2,
  kInvariantViolation = 3,
  kBasisError = 4,
  kSolverError = 5,
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsqprice::cli
