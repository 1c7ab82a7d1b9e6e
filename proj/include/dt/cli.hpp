#pragma once

// Batch command-line interface. Exit codes: 0 success, 1 domain error (error
// JSON {"code","message"} on err), 2 usage error.

#include <ostream>
#include <string>
#include <vector>

namespace dt {

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dt
