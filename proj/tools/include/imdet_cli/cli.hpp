#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imdet::cli {

/// Runs one invocation of the imdet tool. `args` excludes the program name.
/// Returns 0 on success, 1 for bad input or unmet preconditions (message on
/// `err`), 2 when two computations that must agree do not.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imdet::cli
