#pragma once

#include <string>
#include <vector>

namespace lzslab::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // measured
  double tolerance = 0.0;  // allowed
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

// Full invariant suite (quick = subset that runs in seconds).
Report run(bool quick = false);

}  // namespace lzslab::selftest
