#pragma once

#include "shadow_wlo/complex.hpp"

#include <string>
#include <vector>

namespace shadow_wlo {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfcheckOptions {
  // test hook: run the suites under a different Hodge convention
  HodgeConvention hodge{};
  int threads = 1;
};

// the invariant battery of every module; failures are recorded, never thrown
std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& opt = {});

}  // namespace shadow_wlo
