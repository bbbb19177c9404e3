#pragma once

#include <string>
#include <vector>

namespace hl {

// Outcome of a verification: pass, or a list of failure descriptions.
struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string s) {
    ok = false;
    failures.push_back(std::move(s));
  }
  explicit operator bool() const { return ok; }
};

}  // namespace hl
