// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is non-zero when any criterion fails.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "bihindex/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  int failures = 0;
  for (int id = 1; id <= bihindex::kCriterionCount; ++id) {
    const bihindex::CriterionResult r = bihindex::run_criterion(id, seed);
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " [" << std::fixed
              << std::setprecision(3) << r.seconds << " s";
    if (r.budget_seconds > 0) std::cout << " / budget " << std::setprecision(1) << r.budget_seconds << " s";
    std::cout << "] " << r.detail << std::endl;
    if (!r.pass) ++failures;
  }
  std::cout << (bihindex::kCriterionCount - failures) << "/" << bihindex::kCriterionCount << " criteria passed\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
