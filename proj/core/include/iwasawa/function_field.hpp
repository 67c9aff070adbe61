#pragma once

// Hyperelliptic curves y^2 = f(x) over prime fields: point counting, zeta
// numerators, divisor class numbers, and the degree-7 survey that pulls each
// base curve back along the layer substitution x = -1/(t^p - t) and compares
// the p-adic growth of the class number against the cyclic-base predictions.

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "iwasawa/finite_field.hpp"

namespace iwasawa {

// y^2 = f(x) with f squarefree; smooth-model genus floor((deg f - 1)/2).
struct HyperellipticModel {
  PrimePoly f;
  int genus = 0;
};

// validates squarefreeness and degree >= 1
HyperellipticModel hyperelliptic_model(PrimePoly f);

// #points of the smooth model over F_{p^k}: affine solutions of y^2 = f(x)
// plus 1 point at infinity for odd deg f, and for even deg f two or zero
// according to whether the leading coefficient is a square in F_{p^k}.
long long point_count(const PrimePoly& f, int k);

// Zeta numerator P(T) = sum a_i T^i of degree 2g over the base field F_q:
// built from N_1..N_g via Newton's identities, completed by the functional
// equation a_{2g-i} = q^{g-i} a_i; class number h = P(1).
struct ZetaData {
  long long q = 0;
  int genus = 0;
  std::vector<long long> point_counts;  // N_1..N_g
  std::vector<mpz_class> numerator;     // a_0..a_{2g}
  mpz_class class_number;
};

// Computes the divisor class number of y^2 = f(x).  Hard-fails (throws
// arithmetic_error) if the result escapes the Weil window
// (sqrt(q)-1)^{2g} <= h <= (sqrt(q)+1)^{2g}, and for 2g <= 8 additionally
// checks numerically (to 1e-6) that every reciprocal root of P has modulus
// sqrt(q).
ZetaData class_number(const PrimePoly& f);

// N_k implied by a completed zeta numerator (any k >= 1), for cross-checking
// direct counts beyond the ones used in the construction.
long long predicted_point_count(const ZetaData& z, int k);

// x^{deg+1} * h(1/x): same function field as y^2 = h up to the substitution
// x -> 1/x (the factor x^{deg+1} is a square times the needed twist-free
// unit when deg h is odd and h(0) = 0).
PrimePoly reversal(const PrimePoly& h);

// All monic squarefree h of the given degree over F_p with h(0) = 0,
// deduplicated by identifying h with its monic-normalized reversal; the
// lexicographically smaller representative of each pair is kept.  Sorted.
std::vector<PrimePoly> enumerate_h(long p = 3, int degree = 7);

// the full pullback polynomial H(t) = u^{deg+1} h(-1/u), u = t^p - t
PrimePoly pullback_polynomial(const PrimePoly& h);

// The curve of the layer above y^2 = h: y^2 = H~(t) where H~ is the
// odd-multiplicity part of H times its leading unit (H = unit^{-1} H~ S^2),
// so the function field is unchanged.  Throws if H~ is constant.
HyperellipticModel first_layer_model(const PrimePoly& h);

// The possible structures of the layer-above p-group, given a cyclic base
// group of order p^m and total order p^{order_exponent}: the group notations
// of every admissible shape, joined with " or " when the order alone does
// not decide (the homocyclic split point).  Requires order_exponent > m.
std::string shape_label_for_order(long p, int m, int order_exponent);

// predicted probability of each total order p^e1 for the layer-above group
// (base cyclic of order p^m), aggregating shapes of equal order; exact.
std::map<int, mpq_class> predicted_order_distribution(long p, int m, int max_exponent);

struct FirstLayerRecord {
  PrimePoly h;            // base polynomial, y^2 = h
  mpz_class h0;           // class number of the base curve
  int e0 = 0;             // v_p(h0)
  mpz_class h1;           // class number of the pulled-back curve
  int e1 = 0;             // v_p(h1)
  int pullback_genus = 0;
  std::string label;      // admissible-shape label for e0 >= 1, "-" otherwise
};

struct FFSurvey {
  long p = 3;
  int degree = 7;
  long long family_size = 0;    // size of the deduplicated family
  long long surveyed = 0;       // records actually computed (--first cap)
  long long divisible = 0;      // records with e0 >= 1
  std::map<int, long long> e0_hist;              // over all surveyed records
  std::map<int, long long> e1_hist_e0_one;       // over records with e0 = 1
  std::vector<FirstLayerRecord> records;
};

// Surveys the deduplicated family (all of it when first_n < 0, else the
// first first_n in lex order).  Asserts e1 >= e0 + 1 on every record with
// e0 >= 1 (the layer map is injective and the norm is onto).  jobs > 1
// splits the per-curve work across threads; output order is deterministic.
FFSurvey survey_ff(long p = 3, int degree = 7, long long first_n = -1, int jobs = 1);

}  // namespace iwasawa
