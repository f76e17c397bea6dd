#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoassess::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kConfigError = 2,
  kMetricUndefined = 3,
};

struct Environment {
  bool color = false;
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace geoassess::cli
