#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homeolab::cli {

/// Runs one CLI invocation (args exclude the program name) and writes to the
/// given streams. Exit codes: 0 success, 2 input error, 3 resource ceiling,
/// 4 undetermined verdict under --strict.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homeolab::cli
