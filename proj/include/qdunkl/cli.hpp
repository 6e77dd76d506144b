#pragma once

// Command-line front end: eval, moments, converge, bounds, bivariate.

#include <iosfwd>
#include <string>
#include <vector>

namespace qdunkl::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_computation = 2,
    exit_violation = 3,
};

/// Runs one command. `args` excludes the program name. CSV goes to `out`
/// unless --out names a file stem; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdunkl::cli
