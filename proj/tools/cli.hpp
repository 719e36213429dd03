#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dressed::cli {

enum ExitCode : int { ok = 0, usage = 2, numerical = 3, fit = 4 };

/// Runs one command line (without the program name). `color` enables ANSI
/// highlighting of warnings and errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace dressed::cli
