// Acceptance suite: runs every criterion and prints one pass/fail line each.
#include <iostream>

#include "dfrac/selftest.hpp"

int main() {
  dfrac::SelftestOptions opt;
  const auto results = dfrac::run_selftest(opt, std::cout);
  const bool ok = dfrac::all_passed(results);
  std::cout << (ok ? "ACCEPTANCE: all criteria passed"
                   : "ACCEPTANCE: FAILURES PRESENT")
            << "\n";
  return ok ? 0 : 1;
}
