#include "iwasawa/finite_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace iwasawa {

namespace {

long mod_p(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

// c^e mod p for prime p (e >= 0)
long mod_pow(long c, long e, long p) {
  long result = 1;
  long base = mod_p(c, p);
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

long mod_inverse(long c, long p) {
  c = mod_p(c, p);
  if (c == 0) throw arithmetic_error("mod_inverse: zero has no inverse");
  return mod_pow(c, p - 2, p);
}

std::vector<long long> prime_factors_of(long long n) {
  std::vector<long long> out;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

PrimePoly::PrimePoly(long p, std::vector<long> ascending_coeffs)
    : p_(p), coeffs_(std::move(ascending_coeffs)) {
  if (!is_odd_prime(p) && p != 2)
    throw std::invalid_argument("PrimePoly: p must be prime");
  for (long& c : coeffs_) c = mod_p(c, p_);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PrimePoly PrimePoly::zero(long p) { return PrimePoly(p, {}); }

PrimePoly PrimePoly::constant(long p, long c) { return PrimePoly(p, {c}); }

PrimePoly PrimePoly::x(long p) { return PrimePoly(p, {0, 1}); }

PrimePoly PrimePoly::monic_with(long p, std::vector<long> lower, int degree) {
  if (static_cast<int>(lower.size()) != degree)
    throw std::invalid_argument("monic_with: need exactly `degree` lower coefficients");
  lower.push_back(1);
  return PrimePoly(p, std::move(lower));
}

long PrimePoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

long PrimePoly::leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

PrimePoly PrimePoly::operator+(const PrimePoly& o) const {
  if (p_ != o.p_) throw std::invalid_argument("PrimePoly: mixed characteristics");
  std::vector<long> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return PrimePoly(p_, std::move(c));
}

PrimePoly PrimePoly::operator-(const PrimePoly& o) const { return *this + o.scaled(-1); }

PrimePoly PrimePoly::operator*(const PrimePoly& o) const {
  if (p_ != o.p_) throw std::invalid_argument("PrimePoly: mixed characteristics");
  if (is_zero() || o.is_zero()) return zero(p_);
  std::vector<long> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] = (c[i + j] + coeffs_[i] * o.coeffs_[j]) % p_;
  }
  return PrimePoly(p_, std::move(c));
}

PrimePoly PrimePoly::scaled(long s) const {
  std::vector<long> c = coeffs_;
  s = mod_p(s, p_);
  for (long& v : c) v = v * s % p_;
  return PrimePoly(p_, std::move(c));
}

bool PrimePoly::operator<(const PrimePoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
  return false;
}

PrimePoly PrimePoly::monic() const {
  if (is_zero()) throw arithmetic_error("monic: zero polynomial");
  return scaled(mod_inverse(leading(), p_));
}

PrimePoly PrimePoly::derivative() const {
  std::vector<long> c;
  for (int i = 1; i <= degree(); ++i) c.push_back(coeff(i) * (i % p_) % p_);
  return PrimePoly(p_, std::move(c));
}

long PrimePoly::eval(long x) const {
  x = mod_p(x, p_);
  long acc = 0;
  for (int i = degree(); i >= 0; --i) acc = (acc * x + coeff(i)) % p_;
  return acc;
}

PolyDivMod PrimePoly::divmod(const PrimePoly& divisor) const {
  if (p_ != divisor.p_) throw std::invalid_argument("PrimePoly: mixed characteristics");
  if (divisor.is_zero()) throw arithmetic_error("divmod: division by zero polynomial");
  std::vector<long> rem = coeffs_;
  int dd = divisor.degree();
  if (degree() < dd) return {zero(p_), *this};
  std::vector<long> quot(static_cast<size_t>(degree() - dd + 1), 0);
  long lead_inv = mod_inverse(divisor.leading(), p_);
  for (int i = degree(); i >= dd; --i) {
    long c = rem[static_cast<size_t>(i)] * lead_inv % p_;
    if (c == 0) continue;
    quot[static_cast<size_t>(i - dd)] = c;
    for (int j = 0; j <= dd; ++j) {
      size_t idx = static_cast<size_t>(i - dd + j);
      rem[idx] = mod_p(rem[idx] - c * divisor.coeff(j), p_);
    }
  }
  return {PrimePoly(p_, std::move(quot)), PrimePoly(p_, std::move(rem))};
}

PrimePoly PrimePoly::operator%(const PrimePoly& divisor) const {
  return divmod(divisor).remainder;
}

PrimePoly PrimePoly::operator/(const PrimePoly& divisor) const {
  PolyDivMod dm = divmod(divisor);
  if (!dm.remainder.is_zero()) throw arithmetic_error("operator/: inexact polynomial division");
  return dm.quotient;
}

std::string PrimePoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    long c = coeff(i);
    if (c == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0 || c != 1) out << c;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b) {
  while (!b.is_zero()) {
    PrimePoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

PrimePoly poly_pow_mod(const PrimePoly& base, const mpz_class& e, const PrimePoly& modulus) {
  if (e < 0) throw std::invalid_argument("poly_pow_mod: negative exponent");
  PrimePoly result = PrimePoly::constant(base.p(), 1) % modulus;
  PrimePoly b = base % modulus;
  mpz_class n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = (result * b) % modulus;
    b = (b * b) % modulus;
    n >>= 1;
  }
  return result;
}

bool is_squarefree(const PrimePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  PrimePoly d = f.derivative();
  if (d.is_zero()) return false;  // a p-th power of something nonconstant
  return poly_gcd(f, d).degree() == 0;
}

bool is_irreducible(const PrimePoly& f) {
  if (!f.is_monic() || f.degree() < 1)
    throw std::invalid_argument("is_irreducible: need a monic polynomial of degree >= 1");
  int k = f.degree();
  if (k == 1) return true;
  const PrimePoly x = PrimePoly::x(f.p());
  mpz_class p(f.p());
  // x^(p^k) = x mod f, and x^(p^(k/l)) - x coprime to f for every prime l | k
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  if (!(poly_pow_mod(x, pk, f) == x % f)) return false;
  for (long long ell : prime_factors_of(k)) {
    mpz_class sub;
    mpz_pow_ui(sub.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k / ell));
    PrimePoly diff = poly_pow_mod(x, sub, f) - (x % f);
    if (poly_gcd(diff, f).degree() != 0) return false;
  }
  return true;
}

PrimePoly least_irreducible(long p, int degree) {
  if (degree < 1) throw std::invalid_argument("least_irreducible: degree >= 1");
  long long total = 1;
  for (int i = 0; i < degree; ++i) total *= p;
  for (long long n = 0; n < total; ++n) {
    std::vector<long> lower(static_cast<size_t>(degree));
    long long v = n;
    // digit i of n (base p) is the coefficient of x^i, so ascending n orders
    // candidates lexicographically from the highest-degree coefficient down
    for (int i = 0; i < degree; ++i) {
      lower[static_cast<size_t>(i)] = static_cast<long>(v % p);
      v /= p;
    }
    PrimePoly cand = PrimePoly::monic_with(p, std::move(lower), degree);
    if (is_irreducible(cand)) return cand;
  }
  throw arithmetic_error("least_irreducible: none found");  // unreachable
}

PrimePoly pth_root(const PrimePoly& f) {
  if (!f.derivative().is_zero())
    throw std::invalid_argument("pth_root: polynomial is not a p-th power");
  long p = f.p();
  std::vector<long> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
  // over F_p the coefficientwise p-th root is the identity
  return PrimePoly(p, std::move(c));
}

PrimePoly odd_multiplicity_part(const PrimePoly& f) {
  if (f.is_zero()) throw std::invalid_argument("odd_multiplicity_part: zero polynomial");
  if (f.degree() == 0) return PrimePoly::constant(f.p(), 1);
  PrimePoly g = f.monic();
  PrimePoly d = g.derivative();
  if (d.is_zero()) {
    // g = u^p with p odd, so factor multiplicities keep their parity
    return odd_multiplicity_part(pth_root(g));
  }
  PrimePoly c = poly_gcd(g, d);       // drops one off each multiplicity not divisible by p
  PrimePoly w = g / c;                // the factors of multiplicity prime to p, once each
  if (c.degree() == 0) return w;      // g squarefree
  PrimePoly oc = odd_multiplicity_part(c);
  PrimePoly a = poly_gcd(w, oc);      // factors of even multiplicity in g
  return (w / a) * (oc / a);
}

bool is_perfect_square(const PrimePoly& f) {
  if (f.is_zero()) return true;
  if (mod_pow(f.leading(), (f.p() - 1) / 2, f.p()) != 1 && f.p() != 2) return false;
  return odd_multiplicity_part(f).degree() == 0;
}

GaloisField::GaloisField(long p, int k) : p_(p), k_(k), modulus_(PrimePoly::zero(p)) {
  if (!is_odd_prime(p)) throw std::invalid_argument("GaloisField: p must be an odd prime");
  if (k < 1 || k > 16) throw std::invalid_argument("GaloisField: extension degree out of range");
  q_ = 1;
  for (int i = 0; i < k; ++i) {
    if (q_ > (1LL << 26)) throw std::invalid_argument("GaloisField: field too large to tabulate");
    q_ *= p;
  }
  modulus_ = least_irreducible(p, k);

  auto to_poly = [&](uint32_t idx) {
    std::vector<long> c(static_cast<size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      c[static_cast<size_t>(i)] = static_cast<long>(idx % p_);
      idx = static_cast<uint32_t>(idx / p_);
    }
    return PrimePoly(p_, std::move(c));
  };
  auto to_index = [&](const PrimePoly& f) {
    uint32_t idx = 0;
    for (int i = k_ - 1; i >= 0; --i)
      idx = static_cast<uint32_t>(idx * p_ + f.coeff(i));
    return idx;
  };

  // find a multiplicative generator: smallest element index whose order is q-1
  std::vector<long long> ells = prime_factors_of(q_ - 1);
  for (uint32_t cand = 2; cand < q_; ++cand) {
    PrimePoly f = to_poly(cand);
    bool primitive = true;
    for (long long ell : ells) {
      PrimePoly power = poly_pow_mod(f, mpz_class(static_cast<long>((q_ - 1) / ell)), modulus_);
      if (power.degree() == 0 && power.coeff(0) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = cand;
      break;
    }
  }
  if (generator_ == 0) throw arithmetic_error("GaloisField: no generator found");

  exp_.assign(static_cast<size_t>(2 * (q_ - 1)), 0);
  log_.assign(static_cast<size_t>(q_), 0);
  PrimePoly g = to_poly(generator_);
  PrimePoly cur = PrimePoly::constant(p_, 1);
  for (long long i = 0; i < q_ - 1; ++i) {
    uint32_t idx = to_index(cur);
    exp_[static_cast<size_t>(i)] = idx;
    exp_[static_cast<size_t>(i + q_ - 1)] = idx;
    log_[idx] = static_cast<uint32_t>(i);
    cur = (cur * g) % modulus_;
  }
  if (!(cur == PrimePoly::constant(p_, 1)))
    throw arithmetic_error("GaloisField: generator order mismatch");

  inc_.assign(static_cast<size_t>(p_), std::vector<uint32_t>(static_cast<size_t>(q_)));
  for (long c = 0; c < p_; ++c)
    for (long long a = 0; a < q_; ++a) {
      uint32_t low = static_cast<uint32_t>(a % p_);
      inc_[static_cast<size_t>(c)][static_cast<size_t>(a)] =
          static_cast<uint32_t>(a - low + (low + c) % p_);
    }
}

const GaloisField& GaloisField::get(long p, int k) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, const GaloisField*> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(p, k), new GaloisField(p, k)).first;
  return *it->second;
}

uint32_t GaloisField::add(uint32_t a, uint32_t b) const {
  uint32_t out = 0;
  uint32_t place = 1;
  for (int i = 0; i < k_; ++i) {
    out += (a % p_ + b % p_) % p_ * place;
    a = static_cast<uint32_t>(a / p_);
    b = static_cast<uint32_t>(b / p_);
    place = static_cast<uint32_t>(place * p_);
  }
  return out;
}

uint32_t GaloisField::neg(uint32_t a) const {
  uint32_t out = 0;
  uint32_t place = 1;
  for (int i = 0; i < k_; ++i) {
    out += (p_ - a % p_) % p_ * place;
    a = static_cast<uint32_t>(a / p_);
    place = static_cast<uint32_t>(place * p_);
  }
  return out;
}

uint32_t GaloisField::inverse(uint32_t a) const {
  if (a == 0) throw arithmetic_error("GaloisField: zero has no inverse");
  return exp_[static_cast<size_t>(q_ - 1 - log_[a])];
}

uint32_t GaloisField::pow(uint32_t a, long long e) const {
  if (e < 0) throw std::invalid_argument("GaloisField::pow: negative exponent");
  if (a == 0) return e == 0 ? 1u : 0u;
  long long idx = static_cast<long long>(log_[a]) * (e % (q_ - 1)) % (q_ - 1);
  return exp_[static_cast<size_t>(idx)];
}

uint32_t GaloisField::eval(const PrimePoly& f, uint32_t x) const {
  if (f.p() != p_) throw std::invalid_argument("GaloisField::eval: characteristic mismatch");
  uint32_t acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = add_small(mul(acc, x), f.coeff(i));
  return acc;
}

}  // namespace iwasawa
