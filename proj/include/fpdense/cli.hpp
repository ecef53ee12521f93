#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpdense::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidCertificate = 1,
  kUsageError = 2,
  kSearchExhausted = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fpdense::cli
