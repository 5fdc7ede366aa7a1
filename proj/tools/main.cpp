#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const g0wb::cli::CommandResult r = g0wb::cli::run(args);
  (r.exit_code == g0wb::cli::kOk || r.exit_code == g0wb::cli::kFailed ? std::cout : std::cerr) << r.output();
  return r.exit_code;
}
