#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "iwasawa/classification.hpp"
#include "iwasawa/shape.hpp"

namespace iwasawa {

// bits carried by every floating-point evaluation (about 77 decimal digits,
// comfortably past the 30 the distributions are quoted with)
constexpr int kHeuristicFloatBits = 256;

// eta(p) = prod_{j>=1} (1 - p^-j), truncated once the dropped terms are
// certifiably below 10^-30.  The certificate (geometric tail) ships with the
// value.
struct EtaValue {
  long p = 0;
  mpf_class value;
  mpf_class error_bound;  // >= |true eta - value|
  int terms = 0;          // J: factors actually multiplied
};
EtaValue eta(long p);

// Probability in the form coeff * eta(p)^e with coeff an exact rational.
// Keeping the eta power symbolic lets identity checks be exact instead of
// "close to".
class HeuristicValue {
 public:
  HeuristicValue() = default;
  HeuristicValue(long p, mpq_class coeff, int eta_power);

  long p() const { return p_; }
  const mpq_class& coeff() const { return coeff_; }
  int eta_power() const { return eta_power_; }

  HeuristicValue operator+(const HeuristicValue& other) const;  // same p, same power
  HeuristicValue scaled(const mpq_class& c) const;
  HeuristicValue divided_by(const HeuristicValue& other) const;
  bool operator==(const HeuristicValue& other) const = default;

  // 256-bit evaluation
  mpf_class numeric() const;

 private:
  long p_ = 0;
  mpq_class coeff_ = 0;
  int eta_power_ = 0;
};

// rank-r probability p^(-r^2) eta prod_{j<=r} (1-p^-j)^-2; r = 0 gives eta
HeuristicValue clm_rank_prob(long p, int r);
// cyclic probability p^-1 (1-p^-1)^-2 eta
HeuristicValue clm_cyclic_prob(long p);
// lambda = r probability p^-r eta prod_{j<=r} (1-p^-j)^-1; r = 0 gives eta
HeuristicValue ejv_lambda_prob(long p, int r);
// lambda = r probability sum_{k=1}^r rank_prob(k) p^-(r-k) (p-1)/p; r >= 1
HeuristicValue new_lambda_prob(long p, int r);

// order of the automorphism group of the cyclic quotient with parameters
// (m, r): (p-1) p^(m+r-1), returned as (unit factor, exponent)
std::pair<long, int> aut_size_exponent(long p, int m, int r);

// Predicted first-layer distribution for cyclic A_0 of order p^m: each shape
// at parameter r gets mass j_count / p^r (j uniform, r geometric).
struct PredictedShare {
  AbelianPGroupShape shape;
  int r = 0;
  int j_count = 0;
  mpq_class probability;  // j_count / p^r
};

struct PredictedDistribution {
  long p = 0;
  int m = 0;
  int max_r = 0;
  std::vector<PredictedShare> shares;
  mpq_class tail_mass;  // p^-max_r, the part beyond max_r
};

PredictedDistribution predicted_a1_distribution(long p, int m, int max_r);

// Three independent routes to Prob(lambda = 1 | A_0 cyclic) = (p-1)/p, all
// required to agree exactly (and hence to 25 digits numerically).
struct CompatibilityReport {
  long p = 0;
  mpq_class exact;                    // (p-1)/p
  HeuristicValue lambda_ratio;        // ejv(p,1) / clm_cyclic(p); eta-free
  std::vector<mpq_class> cyclic_mass; // from the predicted distribution, m = 1..3
  bool ok = false;
  mpf_class max_deviation;            // numeric spread between the routes
};
CompatibilityReport compatibility_check(long p);

// Decimal rendering for the output boundary (round half away from zero).
// Values must be non-negative.
std::string format_fixed(const mpq_class& x, int digits);
std::string format_fixed(const mpf_class& x, int digits);

}  // namespace iwasawa
