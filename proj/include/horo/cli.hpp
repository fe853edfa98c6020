#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace horo::cli {

enum ExitCode : int { Ok = 0, Validation = 2, Numerical = 3 };

/// Runs one subcommand (grim, bowl, wing, geodesic, dirichlet, verify).
/// args excludes the program name. Diagnostics go to `err`, the summary line
/// to `out`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace horo::cli
