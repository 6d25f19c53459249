#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracclique::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInadmissible = 2,
  kVerificationFailed = 3,
  kNonconvergence = 4,
};

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fracclique::cli
