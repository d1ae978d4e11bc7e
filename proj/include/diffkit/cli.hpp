#pragma once

#include <string>
#include <vector>

namespace diffkit {

/// Exit codes: 0 success, 2 input or library error, 3 resource limit, 1 internal failure.
struct CliResult {
  int code = 0;
  std::string out;
};

/// Runs one invocation; `args` excludes the program name. Errors are reported
/// on `out` as {"error": {"kind": ..., "message": ...}}.
CliResult run_cli(std::vector<std::string> args);

}  // namespace diffkit
