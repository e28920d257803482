#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace toricsplit::testing {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  /// Zero when the criterion has no time limit.
  double limit_seconds = 0.0;
};

/// Runs every acceptance criterion with a fixed seed. Never throws: an
/// exception inside a criterion marks it failed and lands in `detail`.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

/// "[PASS]  3  Kunneth additivity ...  (0.42 s / 30 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace toricsplit::testing
