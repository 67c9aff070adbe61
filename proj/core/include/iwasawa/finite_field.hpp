#pragma once

// Finite fields F_{p^k} with discrete-log tables, and dense polynomial
// arithmetic over the prime field F_p.  The extension fields back the
// point-counting loops of the curve machinery; the prime-field polynomials
// carry everything else (modulus search, squarefree analysis, pullbacks).

#include <cstdint>
#include <vector>

#include "iwasawa/padic.hpp"  // arithmetic_error, is_odd_prime

namespace iwasawa {

struct PolyDivMod;

// Dense polynomial over F_p, coefficients ascending, normalized so the
// leading coefficient is nonzero (the zero polynomial has no coefficients).
class PrimePoly {
 public:
  PrimePoly(long p, std::vector<long> ascending_coeffs);
  static PrimePoly zero(long p);
  static PrimePoly constant(long p, long c);
  static PrimePoly x(long p);
  // X^k + (lower coefficients); convenience for monic construction.
  static PrimePoly monic_with(long p, std::vector<long> lower, int degree);

  long p() const { return p_; }
  // degree of the zero polynomial is -1
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  long coeff(int i) const;  // 0 beyond the degree
  long leading() const;     // leading coefficient; 0 for the zero polynomial
  const std::vector<long>& coeffs() const { return coeffs_; }
  bool is_monic() const { return leading() == 1; }

  PrimePoly operator+(const PrimePoly& o) const;
  PrimePoly operator-(const PrimePoly& o) const;
  PrimePoly operator*(const PrimePoly& o) const;
  PrimePoly scaled(long c) const;
  bool operator==(const PrimePoly& o) const = default;
  // total order used for deterministic enumeration: by degree, then by
  // coefficients from the highest degree down
  bool operator<(const PrimePoly& o) const;

  PrimePoly monic() const;  // divide by the leading coefficient
  PrimePoly derivative() const;
  long eval(long x) const;  // value in [0, p)

  PolyDivMod divmod(const PrimePoly& divisor) const;
  PrimePoly operator%(const PrimePoly& divisor) const;
  PrimePoly operator/(const PrimePoly& divisor) const;  // asserts exactness

  std::string str() const;  // human-readable, highest degree first

 private:
  long p_ = 3;
  std::vector<long> coeffs_;
};

struct PolyDivMod {
  PrimePoly quotient;
  PrimePoly remainder;
};

// monic gcd (gcd with the zero polynomial is the other argument made monic)
PrimePoly poly_gcd(PrimePoly a, PrimePoly b);

// base^e mod modulus (binary exponentiation over F_p[x])
PrimePoly poly_pow_mod(const PrimePoly& base, const mpz_class& e,
                       const PrimePoly& modulus);

// true iff gcd(f, f') is constant; requires f nonzero
bool is_squarefree(const PrimePoly& f);

// Rabin irreducibility test for monic f of degree >= 1
bool is_irreducible(const PrimePoly& f);

// the lexicographically least monic irreducible of the given degree, where
// candidates are ordered by their coefficient tuple from the highest degree
// down (the constant coefficient varies fastest)
PrimePoly least_irreducible(long p, int degree);

// f restricted to exponents divisible by p is a perfect p-th power; returns
// its p-th root.  Requires f'(x) = 0 (every exponent divisible by p).
PrimePoly pth_root(const PrimePoly& f);

// the monic product of the irreducible factors of f that appear with odd
// multiplicity; computed by gcd descent (no factorization).  f nonzero.
PrimePoly odd_multiplicity_part(const PrimePoly& f);

// true iff f is the square of a polynomial (leading coefficient must itself
// be a square mod p and every factor multiplicity even)
bool is_perfect_square(const PrimePoly& f);

// F_{p^k} with full exponential/logarithm tables.  Elements are integer
// indices in [0, p^k): the base-p digits of an index are the coordinates in
// the polynomial basis 1, x, ..., x^{k-1} modulo the defining polynomial
// (least significant digit = constant coordinate).  Indices 0..p-1 are the
// prime subfield.  Instances are cached per (p, k) and immutable once built.
class GaloisField {
 public:
  static const GaloisField& get(long p, int k);

  long p() const { return p_; }
  int k() const { return k_; }
  long long q() const { return q_; }  // p^k
  const PrimePoly& modulus() const { return modulus_; }
  uint32_t generator() const { return generator_; }

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  uint32_t inverse(uint32_t a) const;
  uint32_t pow(uint32_t a, long long e) const;
  // add a prime-subfield constant c in [0, p); tabulated for the hot loops
  uint32_t add_small(uint32_t a, long c) const { return inc_[static_cast<size_t>(c)][a]; }
  bool is_square(uint32_t a) const {
    if (a == 0) return true;
    return log_[a] % 2 == 0;  // q odd, so squares are the even powers
  }
  // evaluate a prime-field polynomial at a field element
  uint32_t eval(const PrimePoly& f, uint32_t x) const;

  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

 private:
  GaloisField(long p, int k);

  long p_;
  int k_;
  long long q_;
  PrimePoly modulus_;
  uint32_t generator_ = 0;
  std::vector<uint32_t> exp_;  // size 2(q-1): g^i for i in [0, 2(q-1))
  std::vector<uint32_t> log_;  // size q; log_[0] unused
  std::vector<std::vector<uint32_t>> inc_;  // inc_[c][a] = a + c, c in [0, p)
};

}  // namespace iwasawa
