// Runs all ten acceptance criteria and prints one PASS/FAIL line per criterion.
#include <cstdio>
#include <vector>

#include "outerpress/harness/verify.hpp"

int main() {
  namespace oh = outerpress::harness;
  const std::vector<int> ids = oh::suite_criteria("all");
  const auto results = oh::run_criteria(ids, oh::suite_threads());
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", oh::format_result(r).c_str());
    if (!r.passed) ++failed;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", results.size() - static_cast<std::size_t>(failed),
              results.size());
  return failed == 0 ? 0 : 1;
}
