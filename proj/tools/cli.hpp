#pragma once

// Command-line front end. `run` takes the arguments after the program name and
// returns what would be written to stdout/stderr plus the process exit code,
// so tests can drive it without spawning a process.

#include <string>
#include <vector>

namespace crosswise::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInfeasible = 3,
  kNumeric = 4,
};

struct Outcome {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args);

}  // namespace crosswise::cli
