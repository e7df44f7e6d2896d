#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace docadopt::cli {

/// Runs one command line (args[0] is the program name). Returns the process
/// exit code: 0 success, 1 failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace docadopt::cli
