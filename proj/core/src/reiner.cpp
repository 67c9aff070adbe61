#include "iwasawa/reiner.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace iwasawa {

void ReinerIdeal::validate() const {
  if (!is_odd_prime(p)) throw std::invalid_argument("ReinerIdeal: p must be an odd prime");
  if (m < 1) throw std::invalid_argument("ReinerIdeal: m must be >= 1");
  if (r < 1) throw std::invalid_argument("ReinerIdeal: r must be >= 1");
  if (j < 0 || j >= p) throw std::invalid_argument("ReinerIdeal: j must be in [0, p-1]");
}

int precision_guard() {
  if (const char* env = std::getenv("IWASAWA_PRECISION_GUARD")) {
    char* end = nullptr;
    long g = std::strtol(env, &end, 10);
    if (end && *end == '\0' && g >= 0 && g <= 64) return static_cast<int>(g);
    throw std::invalid_argument("IWASAWA_PRECISION_GUARD must be an integer in [0, 64]");
  }
  return 2;
}

int default_precision(const ReinerIdeal& ideal) {
  ideal.validate();
  int ceil_term = (ideal.r + static_cast<int>(ideal.p) - 2) / (static_cast<int>(ideal.p) - 1);
  return ideal.m + ceil_term + precision_guard();
}

LocalMatrix relation_matrix(const ReinerIdeal& ideal, int precision) {
  ideal.validate();
  if (ideal.j == 0)
    throw std::invalid_argument(
        "relation_matrix: j = 0 needs the general presentation (extra p^m N column)");
  const int p = static_cast<int>(ideal.p);
  GroupRingElement alpha = make_alpha(ideal.p, precision, ideal.m, ideal.r, ideal.j);
  GroupRingElement t = GroupRingElement::t(ideal.p, precision);
  LocalMatrix mat(ideal.p, precision, p, p);
  GroupRingElement cur = alpha;
  for (int c = 0; c < p; ++c) {
    for (int i = 0; i < p; ++i) mat.set(i, c, cur.coeff(i).residue());
    if (c + 1 < p) cur = t * cur;
  }
  return mat;
}

LocalMatrix relation_matrix_general(const ReinerIdeal& ideal, int precision) {
  ideal.validate();
  const int p = static_cast<int>(ideal.p);
  GroupRingElement alpha = make_alpha(ideal.p, precision, ideal.m, ideal.r, ideal.j);
  GroupRingElement t = GroupRingElement::t(ideal.p, precision);
  LocalMatrix mat(ideal.p, precision, p, p + 1);
  GroupRingElement cur = alpha;
  for (int c = 0; c < p; ++c) {
    for (int i = 0; i < p; ++i) mat.set(i, c, cur.coeff(i).residue());
    if (c + 1 < p) cur = t * cur;
  }
  GroupRingElement pmn = norm_element(ideal.p, precision).scaled(pow_of(ideal.p, ideal.m));
  for (int i = 0; i < p; ++i) mat.set(i, p, pmn.coeff(i).residue());
  return mat;
}

namespace {

QuotientModel quotient_model_at(const ReinerIdeal& ideal, int precision) {
  LocalMatrix mat = (ideal.j != 0) ? relation_matrix(ideal, precision)
                                   : relation_matrix_general(ideal, precision);
  SNFResult divisors = smith_normal_form(mat);
  AbelianPGroupShape shape;
  if (divisors.all_determined())
    shape = AbelianPGroupShape(std::vector<int>(divisors.divisor_valuations));
  return QuotientModel{ideal, precision, std::move(mat), std::move(divisors), std::move(shape)};
}

}  // namespace

QuotientModel quotient_model(const ReinerIdeal& ideal) {
  int precision = default_precision(ideal);
  QuotientModel model = quotient_model_at(ideal, precision);
  if (!model.divisors.all_determined()) {
    // one escalation step, then give up loudly
    model = quotient_model_at(ideal, precision + 2);
    if (!model.divisors.all_determined())
      throw arithmetic_error("quotient_model: divisors unresolved at precision " +
                             std::to_string(precision + 2) +
                             " (raise IWASAWA_PRECISION_GUARD)");
  }
  return model;
}

AbelianPGroupShape quotient_shape_snf(const ReinerIdeal& ideal) {
  return quotient_model(ideal).shape;
}

// --------------------------------------------------------------------------
// counting oracle

namespace {

constexpr std::uint64_t kBruteBudget = 100000000;  // p^(pN) at most 10^8

struct BruteSpace {
  int dim;                  // p coordinates
  std::uint64_t digit_mod;  // p^N
  std::uint64_t pows[8];    // digit_mod^i

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (int i = 0; i < dim; ++i) {
      std::uint64_t da = (a / pows[i]) % digit_mod;
      std::uint64_t db = (b / pows[i]) % digit_mod;
      std::uint64_t s = da + db;
      if (s >= digit_mod) s -= digit_mod;
      out += s * pows[i];
    }
    return out;
  }
};

std::uint64_t closure_size(const BruteSpace& sp, std::uint64_t space,
                           const std::vector<std::uint64_t>& gens) {
  std::vector<std::uint64_t> bits((space + 63) / 64, 0);
  std::vector<std::uint32_t> queue;
  queue.reserve(4096);
  bits[0] |= 1;
  queue.push_back(0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint64_t x = queue[qi];
    for (std::uint64_t g : gens) {
      std::uint64_t y = sp.add(x, g);
      std::uint64_t w = y >> 6, bit = 1ull << (y & 63);
      if (!(bits[w] & bit)) {
        bits[w] |= bit;
        queue.push_back(static_cast<std::uint32_t>(y));
      }
    }
  }
  return queue.size();
}

int exact_log(long p, std::uint64_t value) {
  int e = 0;
  while (value > 1) {
    if (value % static_cast<std::uint64_t>(p) != 0)
      throw arithmetic_error("quotient_brute_force: subgroup order is not a p-power");
    value /= static_cast<std::uint64_t>(p);
    ++e;
  }
  return e;
}

}  // namespace

bool brute_force_in_budget(const ReinerIdeal& ideal, int precision) {
  long double total = 1;
  for (int i = 0; i < static_cast<int>(ideal.p) * precision; ++i) {
    total *= static_cast<long double>(ideal.p);
    if (total > static_cast<long double>(kBruteBudget)) return false;
  }
  return true;
}

int brute_force_precision(const ReinerIdeal& ideal) {
  return std::max(ideal.m, ideal.s()) + 2;
}

AbelianPGroupShape quotient_brute_force(const ReinerIdeal& ideal, int precision) {
  ideal.validate();
  if (precision < 1) throw std::invalid_argument("quotient_brute_force: precision must be >= 1");
  if (!brute_force_in_budget(ideal, precision))
    throw std::invalid_argument("quotient_brute_force: enumeration budget p^(pN) <= 10^8 exceeded");

  const int p = static_cast<int>(ideal.p);
  const int n = precision;

  BruteSpace sp;
  sp.dim = p;
  sp.digit_mod = 1;
  for (int i = 0; i < n; ++i) sp.digit_mod *= static_cast<std::uint64_t>(p);
  std::uint64_t space = 1;
  for (int i = 0; i <= p; ++i) {
    if (i < 8) sp.pows[i] = space;
    if (i < p) space *= sp.digit_mod;
  }

  // relation vectors, including the p^m N column (harmless when redundant)
  LocalMatrix mat = relation_matrix_general(ideal, n);
  std::vector<std::uint64_t> gens;
  for (int c = 0; c < mat.cols(); ++c) {
    std::uint64_t enc = 0;
    for (int i = 0; i < p; ++i) enc += mpz_get_ui(mat.at(i, c).get_mpz_t()) * sp.pows[i];
    if (enc != 0) gens.push_back(enc);
  }

  std::uint64_t ideal_size = closure_size(sp, space, gens);
  int log_ideal = exact_log(ideal.p, ideal_size);

  // L[k] = log_p |p^k Q|; multiplicities of exponent k are the decrements of
  // the successive differences.
  std::vector<int> big_l;
  big_l.push_back(p * n - log_ideal);
  for (int k = 1; big_l.back() > 0; ++k) {
    std::vector<std::uint64_t> gens_k = gens;
    std::uint64_t pk = 1;
    for (int i = 0; i < k && pk < sp.digit_mod; ++i) pk *= static_cast<std::uint64_t>(p);
    if (pk < sp.digit_mod)
      for (int i = 0; i < p; ++i) gens_k.push_back(pk * sp.pows[i]);
    big_l.push_back(exact_log(ideal.p, closure_size(sp, space, gens_k)) - log_ideal);
  }

  std::vector<int> exps;
  for (std::size_t k = 1; k < big_l.size(); ++k) {
    int above_prev = big_l[k - 1] - big_l[k];            // # exponents > k-1
    int above =
        (k + 1 < big_l.size()) ? big_l[k] - big_l[k + 1] : 0;  // # exponents > k
    for (int c = 0; c < above_prev - above; ++c) exps.push_back(static_cast<int>(k));
  }
  return AbelianPGroupShape(std::move(exps));
}

// --------------------------------------------------------------------------
// norm image and fixed points

int norm_image_order(const ReinerIdeal& ideal, int precision) {
  ideal.validate();
  LocalMatrix rel = relation_matrix_general(ideal, precision);
  GroupRingElement nm = norm_element(ideal.p, precision);
  LocalMatrix ncol(ideal.p, precision, static_cast<int>(ideal.p), 1);
  for (int i = 0; i < static_cast<int>(ideal.p); ++i) ncol.set(i, 0, nm.coeff(i).residue());
  return column_span_log_order(rel.augmented_with(ncol)) - column_span_log_order(rel);
}

int fixed_subgroup_order(const ReinerIdeal& ideal, int precision) {
  ideal.validate();
  const int p = static_cast<int>(ideal.p);
  LocalMatrix rel = relation_matrix_general(ideal, precision);

  // multiplication by T on the T-basis: column i holds T^(i+1)
  LocalMatrix mult_t(ideal.p, precision, p, p);
  GroupRingElement t = GroupRingElement::t(ideal.p, precision);
  GroupRingElement cur = t;
  for (int c = 0; c < p; ++c) {
    for (int i = 0; i < p; ++i) mult_t.set(i, c, cur.coeff(i).residue());
    if (c + 1 < p) cur = t * cur;
  }

  // solve T x = -A z: column kernel of [M_T | A], then project onto x
  LocalMatrix stacked = mult_t.augmented_with(rel);
  LocalMatrix gens = kernel_mod_ideal(stacked.transposed());  // rows: (x | z)
  LocalMatrix proj(ideal.p, precision, p, gens.rows());
  for (int g = 0; g < gens.rows(); ++g)
    for (int i = 0; i < p; ++i) proj.set(i, g, gens.at(g, i));

  return column_span_log_order(proj) - column_span_log_order(rel);
}

}  // namespace iwasawa
