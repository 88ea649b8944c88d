#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumeric = 2,
  kGeometry = 3,
  kDivergence = 4,
};

/// Runs the command line `args` (program name excluded). Tables go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace dsc::cli
