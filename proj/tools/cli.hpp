#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace saidi {

/// Runs one CLI command; args exclude the program name. Returns the exit
/// code: 0 ok, 1 other failure, 2 validation error, 3 size guard exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace saidi
