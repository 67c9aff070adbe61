#include "iwasawa/group_ring.hpp"

#include <sstream>

namespace iwasawa {

namespace {

// C(n, k) as an exact integer.
mpz_class binomial(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Coefficients of T^p on 1, T, ..., T^(p-1):  T^p = -sum_{k>=1} C(p,k) T^k.
std::vector<mpz_class> t_reduction_row(long p) {
  std::vector<mpz_class> red(static_cast<size_t>(p), mpz_class(0));
  for (long k = 1; k < p; ++k) red[static_cast<size_t>(k)] = -binomial(p, k);
  return red;
}

// Coefficients of pi^(p-1) on 1, pi, ..., pi^(p-2):
// pi^(p-1) = -sum_{k=0}^{p-2} C(p, k+1) pi^k  (minimal polynomial of pi).
std::vector<mpz_class> pi_reduction_row(long p) {
  std::vector<mpz_class> red(static_cast<size_t>(p - 1));
  for (long k = 0; k + 1 < p; ++k) red[static_cast<size_t>(k)] = -binomial(p, k + 1);
  return red;
}

// Reduce a raw coefficient list of length > width down to `width` using
// x^width = sum_j red[j] x^j, then take everything mod p^N.
std::vector<mpz_class> reduce_poly(std::vector<mpz_class> c, const std::vector<mpz_class>& red,
                                   size_t width, const mpz_class& mod) {
  for (size_t k = c.size(); k-- > width;) {
    if (c[k] == 0) continue;
    for (size_t j = 0; j < width; ++j)
      if (red[j] != 0) c[k - width + j] += c[k] * red[j];
    c[k] = 0;
  }
  c.resize(width);
  for (auto& v : c) {
    v %= mod;
    if (v < 0) v += mod;
  }
  return c;
}

std::vector<PAdicInt> wrap(long p, int n, const std::vector<mpz_class>& c) {
  std::vector<PAdicInt> out;
  out.reserve(c.size());
  for (const auto& v : c) out.emplace_back(p, n, v);
  return out;
}

}  // namespace

// --------------------------------------------------------------------------
// GroupRingElement

GroupRingElement::GroupRingElement(long p, int precision) : p_(p), n_(precision) {
  if (!is_odd_prime(p_)) throw std::invalid_argument("GroupRingElement: p must be an odd prime");
  if (n_ < 1) throw std::invalid_argument("GroupRingElement: precision must be >= 1");
  c_.assign(static_cast<size_t>(p_), PAdicInt(p_, n_, 0));
}

GroupRingElement GroupRingElement::one(long p, int precision) {
  GroupRingElement e(p, precision);
  e.c_[0] = PAdicInt(p, precision, 1);
  return e;
}

GroupRingElement GroupRingElement::t(long p, int precision) {
  GroupRingElement e(p, precision);
  e.c_[1] = PAdicInt(p, precision, 1);
  return e;
}

GroupRingElement GroupRingElement::sigma(long p, int precision) {
  GroupRingElement e = one(p, precision);
  e.c_[1] = PAdicInt(p, precision, 1);
  return e;
}

GroupRingElement GroupRingElement::from_t_coeffs(long p, int precision,
                                                 const std::vector<mpz_class>& coeffs) {
  if (coeffs.size() > static_cast<size_t>(p))
    throw std::invalid_argument("from_t_coeffs: too many coefficients");
  GroupRingElement e(p, precision);
  for (size_t i = 0; i < coeffs.size(); ++i) e.c_[i] = PAdicInt(p, precision, coeffs[i]);
  return e;
}

std::vector<mpz_class> GroupRingElement::t_coeffs() const {
  std::vector<mpz_class> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.residue());
  return out;
}

bool GroupRingElement::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  check_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  check_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_compatible(o);
  const size_t w = static_cast<size_t>(p_);
  std::vector<mpz_class> conv(2 * w - 1, mpz_class(0));
  for (size_t i = 0; i < w; ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < w; ++j) {
      if (o.c_[j].is_zero()) continue;
      conv[i + j] += c_[i].residue() * o.c_[j].residue();
    }
  }
  auto reduced = reduce_poly(std::move(conv), t_reduction_row(p_), w, pow_of(p_, n_));
  GroupRingElement r(p_, n_);
  r.c_ = wrap(p_, n_, reduced);
  return r;
}

GroupRingElement GroupRingElement::pow(int e) const {
  if (e < 0) throw std::invalid_argument("GroupRingElement::pow: negative exponent");
  GroupRingElement acc = one(p_, n_);
  GroupRingElement base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

GroupRingElement GroupRingElement::scaled(const mpz_class& c) const {
  GroupRingElement r = *this;
  PAdicInt f(p_, n_, c);
  for (auto& x : r.c_) x *= f;
  return r;
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
  check_compatible(o);
  return c_ == o.c_;
}

void GroupRingElement::check_compatible(const GroupRingElement& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw arithmetic_error("GroupRingElement: mixed moduli");
}

std::string GroupRingElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].balanced_residue().get_str();
    if (i >= 1) os << "*T";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " (mod " << p_ << "^" << n_ << ")";
  return os.str();
}

// --------------------------------------------------------------------------
// CyclotomicElement

CyclotomicElement::CyclotomicElement(long p, int precision) : p_(p), n_(precision) {
  if (!is_odd_prime(p_)) throw std::invalid_argument("CyclotomicElement: p must be an odd prime");
  if (n_ < 1) throw std::invalid_argument("CyclotomicElement: precision must be >= 1");
  c_.assign(static_cast<size_t>(p_ - 1), PAdicInt(p_, n_, 0));
}

CyclotomicElement CyclotomicElement::one(long p, int precision) {
  CyclotomicElement e(p, precision);
  e.c_[0] = PAdicInt(p, precision, 1);
  return e;
}

CyclotomicElement CyclotomicElement::pi(long p, int precision) {
  CyclotomicElement e(p, precision);
  e.c_[1] = PAdicInt(p, precision, 1);
  return e;
}

CyclotomicElement CyclotomicElement::from_pi_coeffs(long p, int precision,
                                                    const std::vector<mpz_class>& coeffs) {
  if (coeffs.size() > static_cast<size_t>(p - 1))
    throw std::invalid_argument("from_pi_coeffs: too many coefficients");
  CyclotomicElement e(p, precision);
  for (size_t i = 0; i < coeffs.size(); ++i) e.c_[i] = PAdicInt(p, precision, coeffs[i]);
  return e;
}

bool CyclotomicElement::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

CyclotomicElement CyclotomicElement::operator-() const {
  CyclotomicElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
  check_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicElement& CyclotomicElement::operator-=(const CyclotomicElement& o) {
  check_compatible(o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
  check_compatible(o);
  const size_t w = static_cast<size_t>(p_ - 1);
  std::vector<mpz_class> conv(2 * w - 1, mpz_class(0));
  for (size_t i = 0; i < w; ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < w; ++j) {
      if (o.c_[j].is_zero()) continue;
      conv[i + j] += c_[i].residue() * o.c_[j].residue();
    }
  }
  auto reduced = reduce_poly(std::move(conv), pi_reduction_row(p_), w, pow_of(p_, n_));
  CyclotomicElement r(p_, n_);
  r.c_ = wrap(p_, n_, reduced);
  return r;
}

CyclotomicElement CyclotomicElement::pow(int e) const {
  if (e < 0) throw std::invalid_argument("CyclotomicElement::pow: negative exponent");
  CyclotomicElement acc = one(p_, n_);
  CyclotomicElement base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

CyclotomicElement CyclotomicElement::scaled(const mpz_class& c) const {
  CyclotomicElement r = *this;
  PAdicInt f(p_, n_, c);
  for (auto& x : r.c_) x *= f;
  return r;
}

int CyclotomicElement::pi_valuation() const {
  const int cap = static_cast<int>(p_ - 1) * n_;
  int best = cap;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int v = static_cast<int>(p_ - 1) * c_[i].valuation() + static_cast<int>(i);
    if (v < best) best = v;
  }
  return best;
}

bool CyclotomicElement::operator==(const CyclotomicElement& o) const {
  check_compatible(o);
  return c_ == o.c_;
}

void CyclotomicElement::check_compatible(const CyclotomicElement& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw arithmetic_error("CyclotomicElement: mixed moduli");
}

std::string CyclotomicElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].balanced_residue().get_str();
    if (i >= 1) os << "*pi";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " (mod " << p_ << "^" << n_ << ")";
  return os.str();
}

// --------------------------------------------------------------------------
// module operations

GroupRingElement norm_element(long p, int precision) {
  GroupRingElement acc = GroupRingElement::one(p, precision);
  GroupRingElement cur = GroupRingElement::one(p, precision);
  GroupRingElement s = GroupRingElement::sigma(p, precision);
  for (long i = 1; i < p; ++i) {
    cur = cur * s;
    acc += cur;
  }
  return acc;
}

std::vector<PAdicInt> to_sigma_coeffs(const GroupRingElement& a) {
  const long p = a.prime();
  const int n = a.precision();
  mpz_class mod = pow_of(p, n);
  // T^k = (sigma - 1)^k contributes C(k,i) (-1)^(k-i) to sigma^i.
  std::vector<mpz_class> out(static_cast<size_t>(p), mpz_class(0));
  for (long k = 0; k < p; ++k) {
    const mpz_class& bk = a.coeff(static_cast<int>(k)).residue();
    if (bk == 0) continue;
    for (long i = 0; i <= k; ++i) {
      mpz_class term = bk * binomial(k, i);
      if ((k - i) % 2 != 0) term = -term;
      out[static_cast<size_t>(i)] += term;
    }
  }
  std::vector<PAdicInt> res;
  res.reserve(out.size());
  for (auto& v : out) res.emplace_back(p, n, v);
  return res;
}

PAdicInt augmentation(const GroupRingElement& a) {
  auto sig = to_sigma_coeffs(a);
  PAdicInt sum(a.prime(), a.precision(), 0);
  for (const auto& x : sig) sum += x;
  return sum;
}

CyclotomicElement to_cyclotomic(const GroupRingElement& a) {
  const long p = a.prime();
  const int n = a.precision();
  std::vector<mpz_class> raw(static_cast<size_t>(p), mpz_class(0));
  for (long i = 0; i < p; ++i) raw[static_cast<size_t>(i)] = a.coeff(static_cast<int>(i)).residue();
  auto reduced = reduce_poly(std::move(raw), pi_reduction_row(p), static_cast<size_t>(p - 1),
                             pow_of(p, n));
  return CyclotomicElement::from_pi_coeffs(p, n, reduced);
}

FiberPair fiber_image(const GroupRingElement& a) {
  return FiberPair{to_cyclotomic(a), augmentation(a)};
}

bool fiber_check(const CyclotomicElement& x, const PAdicInt& y) {
  if (x.prime() != y.prime()) throw arithmetic_error("fiber_check: mixed primes");
  mpz_class lhs = x.coeff(0).residue() % x.prime();  // x mod pi
  mpz_class rhs = y.residue() % y.prime();
  return lhs == rhs;
}

GroupRingElement make_alpha(long p, int precision, int m, int r, int j) {
  if (m < 1) throw std::invalid_argument("make_alpha: m must be >= 1");
  if (r < 1) throw std::invalid_argument("make_alpha: r must be >= 1");
  if (j < 0 || j >= p) throw std::invalid_argument("make_alpha: j out of range");
  GroupRingElement tr = GroupRingElement::t(p, precision).pow(r);
  if (j == 0) return tr;
  mpz_class scale = mpz_class(j) * pow_of(p, m - 1);
  return tr + norm_element(p, precision).scaled(scale);
}

CyclotomicElement cyclotomic_unit_u(long p, int precision) {
  // pi^(p-1) = u p with u = -sum_{k} (C(p,k+1)/p) pi^k
  std::vector<mpz_class> coeffs(static_cast<size_t>(p - 1));
  for (long k = 0; k + 1 < p; ++k) {
    mpz_class b = binomial(p, k + 1);
    mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(p));
    coeffs[static_cast<size_t>(k)] = -b;
  }
  return CyclotomicElement::from_pi_coeffs(p, precision, coeffs);
}

LocalMatrix cyclotomic_power_matrix(long p, int r, int precision) {
  if (r < 1) throw std::invalid_argument("cyclotomic_power_matrix: r must be >= 1");
  LocalMatrix m(p, precision, static_cast<int>(p - 1), static_cast<int>(p - 1));
  CyclotomicElement cur = CyclotomicElement::pi(p, precision).pow(r);
  CyclotomicElement pi = CyclotomicElement::pi(p, precision);
  for (long c = 0; c < p - 1; ++c) {
    for (long i = 0; i < p - 1; ++i)
      m.set(static_cast<int>(i), static_cast<int>(c), cur.coeff(static_cast<int>(i)).residue());
    if (c + 1 < p - 1) cur = cur * pi;
  }
  return m;
}

AbelianPGroupShape cyclotomic_quotient_shape(long p, int r) {
  if (r < 0) throw std::invalid_argument("cyclotomic_quotient_shape: r must be >= 0");
  int s = r / static_cast<int>(p - 1);
  int t = r % static_cast<int>(p - 1);
  std::vector<int> exps;
  for (int i = 0; i < t; ++i) exps.push_back(s + 1);
  for (int i = 0; i < static_cast<int>(p - 1) - t; ++i) exps.push_back(s);
  return AbelianPGroupShape(std::move(exps));
}

}  // namespace iwasawa
