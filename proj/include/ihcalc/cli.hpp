#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ih {

// Runs the command line given argv-style arguments (program name excluded).
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 semantic error,
// 5 internal assertion.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ih
