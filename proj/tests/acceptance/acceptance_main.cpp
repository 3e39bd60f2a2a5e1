// Runs every acceptance criterion once and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "lef/config.hpp"
#include "lefcli/check_suite.hpp"
#include "lefcli/cli.hpp"

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

// Runtime limits in seconds; criteria without an entry have none.
const std::map<int, double> kTimeLimit = {{1, 10.0}, {3, 60.0}, {6, 120.0}};

Verdict run_group(int group, const lef::RunConfig& config, bool verbose) {
  const auto start = std::chrono::steady_clock::now();
  const lefcli::CheckReport report = lefcli::run_check_group(group, config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::size_t failed = 0;
  for (const auto& line : report) {
    if (!line.passed) ++failed;
    if (verbose || !line.passed) {
      std::cout << "    ";
      lefcli::print_check_line(std::cout, line);
    }
  }
  bool ok = failed == 0 && !report.empty();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu checks, %zu failed, %.2f s", report.size(), failed, seconds);
  std::string detail = buf;
  if (auto it = kTimeLimit.find(group); it != kTimeLimit.end()) {
    std::snprintf(buf, sizeof buf, " (limit %.0f s)", it->second);
    detail += buf;
    if (seconds >= it->second) ok = false;
  }
  return {ok, detail};
}

Verdict run_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "lefbif_acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "coarse.cfg";
  std::ofstream(cfg) << "counts = 51\nseed = 42\n";
  std::string reports[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream out, err;
    codes[i] = lefcli::run({"--config", cfg.string(), "check"}, out, err);
    reports[i] = out.str();
  }
  const bool same = reports[0] == reports[1];
  return {same && !reports[0].empty(),
          std::string(same ? "reports byte-identical" : "reports differ") + ", " +
              std::to_string(reports[0].size()) + " bytes, exit codes " +
              std::to_string(codes[0]) + "/" + std::to_string(codes[1])};
}

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  const lef::RunConfig config{};
  const std::map<int, std::string> names = {
      {1, "analytic Poisson and eigenvalue suite"},
      {2, "super-solution constants"},
      {3, "plus branch invariants"},
      {4, "plus branch threshold ordering"},
      {5, "shooting cross-validation"},
      {6, "minus branch invariants"},
      {7, "determinism of check reports"},
      {8, "nontrivial floor sensitivity"},
  };
  bool all = true;
  for (const auto& [criterion, name] : names) {
    const Verdict v = criterion == 7 ? run_determinism() : run_group(criterion, config, verbose);
    all = all && v.passed;
    std::cout << (v.passed ? "PASS" : "FAIL") << " criterion " << criterion << ": " << name
              << " (" << v.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
