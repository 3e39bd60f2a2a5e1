#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lef/config.hpp"

namespace lefcli {

struct CheckLine {
  int criterion;
  std::string name;
  bool passed;
  std::string detail;
};

using CheckReport = std::vector<CheckLine>;

/// Groups of the invariant suite, in the order `check` runs them:
/// 1 analytic Poisson/eigen, 2 super-solution constants, 3 plus branch,
/// 4 plus ordering, 5 shooting cross-validation, 6 minus branch,
/// 8 floor sensitivity. Group 7 (determinism) compares whole reports and
/// lives with the callers.
const std::vector<int>& suite_groups();

/// Runs one group against the problem described by `config`. Groups 1 and
/// 2 use fixed problems; group 5 uses unit potentials on a 401-node interval.
CheckReport run_check_group(int group, const lef::RunConfig& config);

/// `PASS [g] name detail` / `FAIL [g] name detail`.
void print_check_line(std::ostream& out, const CheckLine& line);
bool all_passed(const CheckReport& report);

}  // namespace lefcli
