#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lefcli {

/// Entry point of the `lefbif` tool. `args` excludes the program name.
/// Exit codes: 0 success, 1 solver non-convergence or failed checks,
/// 2 configuration or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lefcli
