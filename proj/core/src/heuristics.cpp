#include "iwasawa/heuristics.hpp"

#include <stdexcept>

#include "iwasawa/padic.hpp"

namespace iwasawa {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// 1 - p^-j as an exact rational
mpq_class one_minus_p_pow(long p, int j) {
  mpz_class pj = pow_of(p, j);
  mpq_class out(pj - 1, pj);
  out.canonicalize();
  return out;
}

mpz_class ten_pow(int digits) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return out;
}

// fixed-point decimal from a non-negative count of 10^-digits units
std::string render_units(const mpz_class& units, int digits) {
  mpz_class scale = ten_pow(digits);
  mpz_class whole = units / scale;
  mpz_class frac = units % scale;
  std::string f = frac.get_str();
  std::string out = whole.get_str();
  if (digits > 0) {
    out += '.';
    out += std::string(static_cast<size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

}  // namespace

EtaValue eta(long p) {
  require(p >= 2, "eta: p must be >= 2");
  EtaValue out;
  out.p = p;

  // smallest J with p^-J < 10^-30
  mpz_class pj = 1;
  mpz_class bound = ten_pow(30);
  int terms = 0;
  while (pj <= bound) {
    pj *= p;
    ++terms;
  }
  out.terms = terms;

  mpf_class value(1, kHeuristicFloatBits);
  mpf_class pw(1, kHeuristicFloatBits);
  for (int j = 1; j <= terms; ++j) {
    pw /= p;
    value *= 1 - pw;
  }
  out.value = std::move(value);

  // geometric tail: sum_{j>J} p^-j = p^-J / (p-1), and the partial product
  // is within that of the limit
  mpf_class tail(0, kHeuristicFloatBits);
  mpf_set_z(tail.get_mpf_t(), pj.get_mpz_t());
  out.error_bound = 1 / (tail * (p - 1));
  return out;
}

HeuristicValue::HeuristicValue(long p, mpq_class coeff, int eta_power)
    : p_(p), coeff_(std::move(coeff)), eta_power_(eta_power) {
  require(p >= 2, "HeuristicValue: p must be >= 2");
  coeff_.canonicalize();
}

HeuristicValue HeuristicValue::operator+(const HeuristicValue& other) const {
  require(p_ == other.p_, "HeuristicValue: mixed p in addition");
  require(eta_power_ == other.eta_power_, "HeuristicValue: mixed eta powers in addition");
  return HeuristicValue(p_, coeff_ + other.coeff_, eta_power_);
}

HeuristicValue HeuristicValue::scaled(const mpq_class& c) const {
  return HeuristicValue(p_, coeff_ * c, eta_power_);
}

HeuristicValue HeuristicValue::divided_by(const HeuristicValue& other) const {
  require(p_ == other.p_, "HeuristicValue: mixed p in division");
  require(other.coeff_ != 0, "HeuristicValue: division by zero");
  return HeuristicValue(p_, coeff_ / other.coeff_, eta_power_ - other.eta_power_);
}

mpf_class HeuristicValue::numeric() const {
  require(p_ >= 2, "HeuristicValue: uninitialized value");
  mpf_class out(0, kHeuristicFloatBits);
  mpf_set_q(out.get_mpf_t(), coeff_.get_mpq_t());
  if (eta_power_ != 0) {
    mpf_class e = eta(p_).value;
    for (int i = 0; i < eta_power_; ++i) out *= e;
    for (int i = 0; i > eta_power_; --i) out /= e;
  }
  return out;
}

HeuristicValue clm_rank_prob(long p, int r) {
  require(p >= 2, "clm_rank_prob: p must be >= 2");
  require(r >= 0, "clm_rank_prob: r must be >= 0");
  mpq_class coeff(1, pow_of(p, r * r));
  coeff.canonicalize();
  for (int j = 1; j <= r; ++j) {
    mpq_class f = one_minus_p_pow(p, j);
    coeff /= f * f;
  }
  return HeuristicValue(p, coeff, 1);
}

HeuristicValue clm_cyclic_prob(long p) {
  require(p >= 2, "clm_cyclic_prob: p must be >= 2");
  mpq_class f = one_minus_p_pow(p, 1);
  mpq_class coeff(1, p);
  coeff.canonicalize();
  coeff /= f * f;
  return HeuristicValue(p, coeff, 1);
}

HeuristicValue ejv_lambda_prob(long p, int r) {
  require(p >= 2, "ejv_lambda_prob: p must be >= 2");
  require(r >= 0, "ejv_lambda_prob: r must be >= 0");
  mpq_class coeff(1, pow_of(p, r));
  coeff.canonicalize();
  for (int j = 1; j <= r; ++j) coeff /= one_minus_p_pow(p, j);
  return HeuristicValue(p, coeff, 1);
}

HeuristicValue new_lambda_prob(long p, int r) {
  require(p >= 2, "new_lambda_prob: p must be >= 2");
  require(r >= 1, "new_lambda_prob: r must be >= 1");
  HeuristicValue acc(p, 0, 1);
  mpq_class last_step(p - 1, p);
  last_step.canonicalize();
  for (int k = 1; k <= r; ++k) {
    mpq_class drop(1, pow_of(p, r - k));
    drop.canonicalize();
    acc = acc + clm_rank_prob(p, k).scaled(drop * last_step);
  }
  return acc;
}

std::pair<long, int> aut_size_exponent(long p, int m, int r) {
  require(is_odd_prime(p), "aut_size_exponent: p must be an odd prime");
  require(m >= 1, "aut_size_exponent: m must be >= 1");
  require(r >= 1, "aut_size_exponent: r must be >= 1");
  return {p - 1, m + r - 1};
}

PredictedDistribution predicted_a1_distribution(long p, int m, int max_r) {
  require(is_odd_prime(p), "predicted_a1_distribution: p must be an odd prime");
  require(m >= 1, "predicted_a1_distribution: m must be >= 1");
  require(max_r >= 0, "predicted_a1_distribution: max_r must be >= 0");

  PredictedDistribution out;
  out.p = p;
  out.m = m;
  out.max_r = max_r;
  out.tail_mass = mpq_class(1, pow_of(p, max_r));
  out.tail_mass.canonicalize();

  mpq_class normalizer(1, (p - 1) * pow_of(p, m - 1));
  normalizer.canonicalize();

  for (const EnumeratedShape& entry : theorem1_enumerate(p, m, max_r + m)) {
    PredictedShare share;
    share.shape = entry.shape;
    share.r = entry.r;
    share.j_count = entry.j_count;
    share.probability = mpq_class(entry.j_count, pow_of(p, entry.r));
    share.probability.canonicalize();

    // same mass through the automorphism-weighted form, as a consistency check
    mpq_class weight(entry.j_count, (p - 1) * pow_of(p, entry.r + m - 1));
    weight.canonicalize();
    if (weight / normalizer != share.probability)
      throw arithmetic_error("predicted_a1_distribution: weighted and direct mass disagree");

    out.shares.push_back(std::move(share));
  }
  return out;
}

CompatibilityReport compatibility_check(long p) {
  require(is_odd_prime(p), "compatibility_check: p must be an odd prime");
  CompatibilityReport report;
  report.p = p;
  report.exact = mpq_class(p - 1, p);
  report.exact.canonicalize();
  report.lambda_ratio = ejv_lambda_prob(p, 1).divided_by(clm_cyclic_prob(p));

  bool ok = report.lambda_ratio.eta_power() == 0 && report.lambda_ratio.coeff() == report.exact;
  for (int m = 1; m <= 3; ++m) {
    mpq_class mass = 0;
    for (const PredictedShare& share : predicted_a1_distribution(p, m, (static_cast<int>(p) - 1) * m).shares)
      if (share.shape.is_cyclic()) mass += share.probability;
    ok = ok && mass == report.exact;
    report.cyclic_mass.push_back(std::move(mass));
  }
  report.ok = ok;

  mpf_class exact_f(0, kHeuristicFloatBits);
  mpf_set_q(exact_f.get_mpf_t(), report.exact.get_mpq_t());
  mpf_class dev(0, kHeuristicFloatBits);
  dev = abs(report.lambda_ratio.numeric() - exact_f);
  for (const mpq_class& mass : report.cyclic_mass) {
    mpf_class mass_f(0, kHeuristicFloatBits);
    mpf_set_q(mass_f.get_mpf_t(), mass.get_mpq_t());
    mpf_class d = abs(mass_f - exact_f);
    if (d > dev) dev = d;
  }
  report.max_deviation = std::move(dev);
  return report;
}

std::string format_fixed(const mpq_class& x, int digits) {
  require(x >= 0, "format_fixed: value must be non-negative");
  require(digits >= 0 && digits <= 30, "format_fixed: digits out of range");
  // floor(x * 10^digits + 1/2), exactly
  mpq_class scaled = x * ten_pow(digits) + mpq_class(1, 2);
  mpz_class units;
  mpz_fdiv_q(units.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  return render_units(units, digits);
}

std::string format_fixed(const mpf_class& x, int digits) {
  require(x >= 0, "format_fixed: value must be non-negative");
  require(digits >= 0 && digits <= 30, "format_fixed: digits out of range");
  mpf_class scaled(0, kHeuristicFloatBits);
  mpf_set_z(scaled.get_mpf_t(), ten_pow(digits).get_mpz_t());
  scaled = x * scaled + mpf_class(0.5, kHeuristicFloatBits);
  mpf_floor(scaled.get_mpf_t(), scaled.get_mpf_t());
  mpz_class units;
  mpz_set_f(units.get_mpz_t(), scaled.get_mpf_t());
  return render_units(units, digits);
}

}  // namespace iwasawa
