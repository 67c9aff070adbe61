#pragma once

#include "iwasawa/group_ring.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/shape.hpp"

namespace iwasawa {

// Finite-index ideal of Z_p[Z/p] with parameters (m, r, j): generated by
// alpha = T^r + j p^(m-1) N together with p^m N (the extra generator is
// redundant when j != 0, where the ideal is principal).  The quotient has
// order p^(r+m).
struct ReinerIdeal {
  long p = 3;
  int m = 1;
  int r = 1;
  int j = 1;  // 0 <= j <= p-1; j = 0 is the non-principal boundary case

  int s() const { return r / static_cast<int>(p - 1); }
  int t() const { return r % static_cast<int>(p - 1); }
  void validate() const;
};

// Working precision m + ceil(r/(p-1)) + guard.  The guard defaults to 2 and
// can be overridden through the IWASAWA_PRECISION_GUARD environment variable.
int default_precision(const ReinerIdeal& ideal);
int precision_guard();

// p x p matrix whose columns are T^i alpha, i = 0..p-1, on the T-basis.
// Requires j != 0 (otherwise the span misses the p^m N generator).
LocalMatrix relation_matrix(const ReinerIdeal& ideal, int precision);
// p x (p+1) matrix with the extra column p^m N; valid for every j.
LocalMatrix relation_matrix_general(const ReinerIdeal& ideal, int precision);

// Quotient presentation together with its resolved divisor data.
struct QuotientModel {
  ReinerIdeal ideal;
  int precision = 0;
  LocalMatrix matrix;
  SNFResult divisors;
  AbelianPGroupShape shape;
};

// Runs the divisor computation at the default precision; if any divisor is
// unresolved (valuation >= N) retries once with N + 2 before giving up.
QuotientModel quotient_model(const ReinerIdeal& ideal);
AbelianPGroupShape quotient_shape_snf(const ReinerIdeal& ideal);

// Counting oracle, independent of the elimination code: materializes the
// subgroup generated by the relation vectors inside (Z/p^N)^p by closure,
// then reads the quotient shape off the orders |p^k Q|.  Requires the
// enumeration budget p^(pN) <= 10^8.  Exponents are reported capped at N:
// the result is exact iff max exponent < N.
AbelianPGroupShape quotient_brute_force(const ReinerIdeal& ideal, int precision);

// Smallest precision at which the brute-force result is provably exact
// (max(m, s) + 2), used to keep enumeration budgets small.
int brute_force_precision(const ReinerIdeal& ideal);
bool brute_force_in_budget(const ReinerIdeal& ideal, int precision);

// log_p of the order of the image of the norm in the quotient, computed from
// the presentation (not read back from m).
int norm_image_order(const ReinerIdeal& ideal, int precision);

// log_p of the order of the T-kernel (the fixed subgroup) of the quotient,
// computed via the left kernel of the multiplication-by-T matrix against the
// relation columns.
int fixed_subgroup_order(const ReinerIdeal& ideal, int precision);

}  // namespace iwasawa
