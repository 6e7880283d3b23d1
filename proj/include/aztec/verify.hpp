#pragma once
// Cross-module invariant suite behind the `verify` command: every check
// recomputes a quantity along two independent routes (closed form vs oracle,
// exact vs enumeration, finite size vs asymptotics) and reports pass/fail
// with a short evidence string. Deterministic: fixed seeds, fixed fixtures.
#include <string>
#include <vector>

namespace aztec {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// quick = the sub-second subset; the full run adds the sampler chi-square,
// the finite-size free-energy comparison and the larger enumerations.
std::vector<CheckResult> run_verification(bool quick);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace aztec
