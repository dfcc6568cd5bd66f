#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zetalab::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTolerance = 2;

/// Runs one command line; args excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetalab::cli
