#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jumpcoach::cli {

enum ExitCode : int {
  kOk = 0,
  kFindings = 1,
  kConfigError = 2,
  kIoError = 3,
  kParseError = 4,
  kNoCalibration = 5,
};

/// Seed used when --seed is not given.
inline constexpr unsigned long long kDefaultSeed = 42;

/// Runs the jumpcoach command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jumpcoach::cli
