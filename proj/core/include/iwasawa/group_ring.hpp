#pragma once

#include <vector>

#include "iwasawa/padic.hpp"
#include "iwasawa/shape.hpp"

namespace iwasawa {

// Element of Z_p[Z/p] at precision p^N, written on the basis 1, T, ...,
// T^(p-1) where T = sigma - 1 for a generator sigma of the group.  Products
// are reduced with T^p = -sum_{k=1}^{p-1} C(p,k) T^k, which follows from
// (1+T)^p = 1; the reduction table is built from binomial coefficients per
// (p, N), nothing is hardcoded.
class GroupRingElement {
public:
  GroupRingElement(long p, int precision);  // zero
  static GroupRingElement zero(long p, int precision) { return {p, precision}; }
  static GroupRingElement one(long p, int precision);
  static GroupRingElement t(long p, int precision);
  static GroupRingElement sigma(long p, int precision);
  static GroupRingElement from_t_coeffs(long p, int precision,
                                        const std::vector<mpz_class>& coeffs);

  long prime() const { return p_; }
  int precision() const { return n_; }
  // Coefficient of T^i, 0 <= i < p.
  const PAdicInt& coeff(int i) const { return c_.at(i); }
  std::vector<mpz_class> t_coeffs() const;

  bool is_zero() const;

  GroupRingElement operator-() const;
  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement pow(int e) const;
  GroupRingElement scaled(const mpz_class& c) const;

  bool operator==(const GroupRingElement& o) const;
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  std::string str() const;

private:
  void check_compatible(const GroupRingElement& o) const;

  long p_;
  int n_;
  std::vector<PAdicInt> c_;  // size p
};

// Element of Z_p[zeta_p] at precision p^N on the basis 1, pi, ..., pi^(p-2)
// where pi = zeta - 1.  Reduction uses pi^(p-1) = -sum_{k=0}^{p-2} C(p,k+1)
// pi^k, i.e. the minimal polynomial of pi.
class CyclotomicElement {
public:
  CyclotomicElement(long p, int precision);  // zero
  static CyclotomicElement zero(long p, int precision) { return {p, precision}; }
  static CyclotomicElement one(long p, int precision);
  static CyclotomicElement pi(long p, int precision);
  static CyclotomicElement from_pi_coeffs(long p, int precision,
                                          const std::vector<mpz_class>& coeffs);

  long prime() const { return p_; }
  int precision() const { return n_; }
  const PAdicInt& coeff(int i) const { return c_.at(i); }

  bool is_zero() const;

  CyclotomicElement operator-() const;
  CyclotomicElement& operator+=(const CyclotomicElement& o);
  CyclotomicElement& operator-=(const CyclotomicElement& o);
  friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) { return a += b; }
  friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) { return a -= b; }
  CyclotomicElement operator*(const CyclotomicElement& o) const;
  CyclotomicElement pow(int e) const;
  CyclotomicElement scaled(const mpz_class& c) const;

  // pi-adic valuation: min over i of (p-1)*v_p(c_i) + i.  The p-1 terms have
  // pairwise distinct valuations, so the minimum is exact.  Returns
  // (p-1)*precision for zero (the cap).
  int pi_valuation() const;

  bool operator==(const CyclotomicElement& o) const;
  bool operator!=(const CyclotomicElement& o) const { return !(*this == o); }

  std::string str() const;

private:
  void check_compatible(const CyclotomicElement& o) const;

  long p_;
  int n_;
  std::vector<PAdicInt> c_;  // size p-1
};

// The norm element 1 + sigma + ... + sigma^(p-1), accumulated from actual
// powers of sigma (its T-coefficients must come out as C(p, k+1)).
GroupRingElement norm_element(long p, int precision);

// Augmentation: rewrite on the sigma-power basis and evaluate at sigma = 1
// (sum of sigma-coefficients).
PAdicInt augmentation(const GroupRingElement& a);
std::vector<PAdicInt> to_sigma_coeffs(const GroupRingElement& a);

// Ring map fixed by T -> pi (i.e. sigma -> zeta).  Its kernel is Z_p * norm.
CyclotomicElement to_cyclotomic(const GroupRingElement& a);

// Image of an element in the fiber product Z_p[zeta] x Z_p, where the two
// coordinates must agree modulo (pi, p).
struct FiberPair {
  CyclotomicElement x;
  PAdicInt y;
};
FiberPair fiber_image(const GroupRingElement& a);
// The compatibility test x mod pi == y mod p.
bool fiber_check(const CyclotomicElement& x, const PAdicInt& y);

// The generator T^r + j p^(m-1) N of a finite-index ideal (the j = 0 case
// degenerates to T^r on its own).
GroupRingElement make_alpha(long p, int precision, int m, int r, int j);

// Unit u with pi^(p-1) = u * p; satisfies u == -1 mod pi.
CyclotomicElement cyclotomic_unit_u(long p, int precision);

// (p-1) x (p-1) matrix whose columns are pi^(r+i), i = 0..p-2, on the power
// basis: a presentation of Z_p[zeta] / pi^r.
LocalMatrix cyclotomic_power_matrix(long p, int r, int precision);

// Closed-form shape of Z_p[zeta] / pi^r: with r = (p-1)s + t, 0 <= t < p-1,
// t cyclic factors of exponent s+1 and p-1-t of exponent s.
AbelianPGroupShape cyclotomic_quotient_shape(long p, int r);

}  // namespace iwasawa
