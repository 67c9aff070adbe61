#pragma once

#include <map>
#include <vector>

#include "iwasawa/shape.hpp"

namespace iwasawa {

// Primitive positive-definite binary quadratic form a x^2 + b xy + c y^2 of
// negative discriminant b^2 - 4ac.
struct QuadForm {
  long long a = 0;
  long long b = 0;
  long long c = 0;

  long long discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  auto operator<=>(const QuadForm&) const = default;
};

// Trial division certifies squarefreeness only below this bound; larger |d|
// is rejected rather than silently mis-certified.
constexpr long long kDiscriminantBudget = 100000000;

// d = 1 mod 4 squarefree, or d = 0 mod 4 with d/4 squarefree and = 2,3 mod 4
bool is_fundamental(long long d);

// Kronecker symbol (d | p) for odd prime p, via Euler's criterion
int kronecker_symbol(long long d, long p);
// inert or ramified, i.e. (d | p) != +1
bool p_nonsplit(long long d, long p);

QuadForm identity_form(long long d);
QuadForm reduce(QuadForm f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm power_form(const QuadForm& f, long long e);
QuadForm inverse_form(const QuadForm& f);

// all reduced forms of discriminant d, ordered by (a, b, c)
std::vector<QuadForm> reduced_forms(long long d);

struct ClassGroupResult {
  long long discriminant = 0;
  long p = 0;
  long long class_number = 0;
  AbelianPGroupShape p_sylow_shape;
};

// h by reduced-form count; the p-Sylow subgroup materialized as the image of
// the (h / p^e)-power map, its shape read off the p^k-power orders
ClassGroupResult class_group(long long d, long p);

// distinct prime factors of |d|; 2^(count-1) is the genus number
int discriminant_prime_factors(long long d);

struct QuadSurveyResult {
  long p = 0;
  int family = 0;  // residue class of d mod p
  long long min_abs = 0;
  long long max_abs = 0;
  long long surveyed = 0;
  long long trivial_excluded = 0;      // d = -3, -4
  long long coprime = 0;               // p does not divide h
  long long noncyclic = 0;
  std::map<int, long long> cyclic_by_m;
  std::vector<ClassGroupResult> records;  // ascending |d|
};

// Survey fundamental non-split d = -n, min_abs <= n <= max_abs, with d in the
// given residue class mod p.  family must not be a split class.
QuadSurveyResult survey_quad(long p, int family, long long min_abs, long long max_abs,
                             int jobs = 1);

}  // namespace iwasawa
