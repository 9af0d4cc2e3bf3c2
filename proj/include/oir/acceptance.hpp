#pragma once

#include <string>
#include <vector>

namespace oir {

struct CheckResult {
  std::string id;
  std::string group;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Ids or groups to run; empty runs every check.
  std::vector<std::string> only;
  /// Test fixture: the covering-net learner under test scores every label
  /// as 1 - y, so its beta factors no longer match the revealed labels.
  bool inject_beta_fault = false;
  unsigned threads = 0;
};

struct CheckInfo {
  std::string id;
  std::string group;
  std::string title;
};

const std::vector<CheckInfo>& acceptance_checks();

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace oir
