#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fbar {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

/// Runs one command line (without the program name). Data goes to files in the
/// output directory (or `out`), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fbar
