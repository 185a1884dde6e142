#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracpc::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitDivergence = 3,
  kExitIo = 4,
};

/// Runs the `solve`, `bench` or `gm` subcommand. `args` excludes the program
/// name. Normal output goes to `out` when no file is given, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracpc::app
