#include "iwasawa/verify.hpp"

#include <string>

#include "doctest.h"
#include "test_util.hpp"

TEST_CASE("the battery passes on a moderate grid for each prime") {
  for (long p : {3L, 5L}) {
    iwasawa::VerifyResult result = iwasawa::verify_battery(p, 2, 6);
    INFO("p = ", p, ", first failure: ",
         result.failures.empty() ? std::string("none") : result.failures.front());
    CHECK(result.ok());
    // shape + divisor-sum per (m, r, j) cell, plus the oracle cells for p=3,
    // the fixed-subgroup grid, and the cyclotomic row
    long long grid = 2LL * 6 * (p - 1);
    long long minimum = 2 * grid + 2LL * 6 * p + 3 * (p - 1);
    CHECK(result.cases >= minimum);
    CHECK(result.p == p);
  }
}

TEST_CASE("the battery counts enumeration cross-checks for p = 3") {
  iwasawa::VerifyResult small = iwasawa::verify_battery(3, 1, 2);
  CHECK(small.ok());
  // 1 m x 2 r x 2 j cells: 2 comparisons each + 1 oracle each (all in
  // budget at precision <= 5), + fixed-subgroup 2*3, + cyclotomic 6
  CHECK(small.cases == 3 * 4 + 6 + 6);
}
