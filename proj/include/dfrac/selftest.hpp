#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dfrac {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string module;
  bool passed = false;
  double measured = 0.0;  ///< the quantity compared against the limit
  double limit = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  std::string filter;             ///< substring match on module or name
  bool inject_kernel_fault = false; ///< corrupt a kernel table (must be caught)
  unsigned seed = 0;
};

/// Run the acceptance criteria, one pass/fail line per criterion on `log`.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opt,
                                          std::ostream& log);

/// True when every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

// Frozen regression baselines (window [-256, 256], h = 1, unit impulse at 0):
// case-I ratio at alpha = 0.25, beta = 0.5 and case-IV ratio at alpha = 0.5.
extern const double kBaselineCaseI;
extern const double kBaselineCaseIV;

} // namespace dfrac
