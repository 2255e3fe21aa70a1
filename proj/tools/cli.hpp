#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iwb::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,      // not provable, verification failed, expectation mismatch
  kUsage = 2,         // bad flags or invalid input
  kInconclusive = 3,  // budget exhausted or a check could not be decided
};

// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Splits a batch line into arguments; double quotes group words.
std::vector<std::string> split_line(const std::string& line);

}  // namespace iwb::cli
