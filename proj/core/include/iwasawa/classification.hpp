#pragma once

#include <vector>

#include "iwasawa/shape.hpp"

namespace iwasawa {

// Closed-form isomorphism type of the quotient by the (m, r, j) ideal with
// j != 0.  Writing r = (p-1)s + t, 0 <= t < p-1, the case split is on the
// relative position of m and s; at the boundary m = s, t = 0 the answer also
// depends on whether j is congruent to (-1)^m mod p.  Zero exponents are
// dropped (e.g. the factor p^(m-1) for m = 1).
AbelianPGroupShape table1_shape(long p, int m, int r, int j);

// Chooses the branch of table1_shape at the split point r = (p-1)m.
bool split_point_j_congruent(long p, int m, int j);

// One possible first-layer group for a cyclic base of order p^m.
struct EnumeratedShape {
  AbelianPGroupShape shape;
  int r = 0;        // index parameter giving this shape, |group| = p^(r+m)
  int j_count = 0;  // number of j in [1, p-1] realizing it
};

// All possible first-layer shapes with order exponent r + m <= max_exponent,
// ordered by r (at the split point r = (p-1)m the j !== (-1)^m branch with
// j_count = p-2 is listed first, then the (Z/p^m)^p branch with j_count = 1).
std::vector<EnumeratedShape> theorem1_enumerate(long p, int m, int max_exponent);

// lambda = 1 for a cyclic base of order p^m holds exactly when the first
// layer is cyclic of order p^(m+1).
bool is_lambda_one_pair(int m, const AbelianPGroupShape& first_layer);

}  // namespace iwasawa
