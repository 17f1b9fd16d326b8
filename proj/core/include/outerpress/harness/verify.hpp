#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace outerpress::harness {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their thresholds
  double seconds = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CriterionResult> results;

  bool passed() const;
};

// conservation, oracles, mms, convergence-to-stationary, bounds
const std::vector<std::string>& suite_names();

// Criterion ids run by a suite; "all" selects 1..10. Throws InputError for unknown names.
std::vector<int> suite_criteria(std::string_view suite);

std::string criterion_name(int id);

// OUTERPRESS_THREADS when set to a positive integer, else the hardware concurrency (at least 1).
unsigned suite_threads();

// Runs the criteria on up to `threads` workers. Preset runs shared by several criteria are
// computed once. Results come back in the order of `ids`.
std::vector<CriterionResult> run_criteria(std::span<const int> ids, unsigned threads);

SuiteReport run_suite(std::string_view suite, unsigned threads);

// "PASS  C2 momentum-conservation  <detail>"
std::string format_result(const CriterionResult& result);

}  // namespace outerpress::harness
