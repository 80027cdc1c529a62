#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cellscope {

/// Command-line dispatch. Returns the process exit status: 0 on
/// success, 2 on usage errors, 1 on data errors (message on `err`).
/// Every flag can also be supplied through a CELLSCOPE_-prefixed
/// environment variable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellscope
