#pragma once

// The acceptance suite: eight end-to-end criteria, each with a pass/fail
// verdict, a one-line detail and its wall-clock time.

#include <cstdint>
#include <string>
#include <vector>

namespace bihindex {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  /// Wall-clock budget; 0 means none.
  double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 8;

/// Runs criterion `id` (1..8). Random fields are drawn from `seed`.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

}  // namespace bihindex
