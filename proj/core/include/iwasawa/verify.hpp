#pragma once

// Cross-validation battery: the closed-form quotient shapes against the
// elimination pipeline (and, for p = 3, against the counting oracle), the
// divisor-sum and fixed-subgroup laws, and the cyclotomic closed form
// against its power-matrix presentation.  Used by the `verify` subcommand
// and the acceptance suite.

#include <string>
#include <vector>

namespace iwasawa {

struct VerifyResult {
  long p = 0;
  int max_m = 0;
  int max_r = 0;
  long long cases = 0;                // individual comparisons executed
  std::vector<std::string> failures;  // empty on success
  bool ok() const { return failures.empty(); }
};

// Runs every comparison over the grid 1 <= m <= max_m, 1 <= r <= max_r,
// 0 or 1 <= j <= p-1 as appropriate.  Enumeration cross-checks cap their
// working precision to stay inside the counting budget; capped exponents are
// compared capped on both sides.
VerifyResult verify_battery(long p, int max_m, int max_r);

}  // namespace iwasawa
