#pragma once

#include <string>
#include <vector>

namespace g0wb::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kData = 3 };

struct CommandResult {
  int exit_code = kOk;
  std::string report;
  std::string machine_block;

  /// What the executable prints: the report, "---", then the machine block.
  std::string output() const;
};

/// Runs one command line; args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace g0wb::cli
