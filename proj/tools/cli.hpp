#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hproj::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kConvergence = 3 };

// Parses args (without the program name) and runs one subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Oracle suite behind `selftest`; returns the number of failed checks.
int selftest(std::ostream& out);

}  // namespace hproj::cli
