#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace samestats {

// Runs one CLI invocation (arguments exclude the program name). JSON goes to
// out, diagnostics to err. Returns 0 on success, 1 on a domain error and 2 on
// a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace samestats
