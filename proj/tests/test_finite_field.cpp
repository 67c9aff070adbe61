#include "iwasawa/finite_field.hpp"

#include <set>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using iwasawa::GaloisField;
using iwasawa::PrimePoly;

namespace {

PrimePoly random_poly(long p, int max_degree) {
  int deg = static_cast<int>(testutil::random_mpz_below(mpz_class(max_degree + 1)).get_ui());
  std::vector<long> c(static_cast<size_t>(deg + 1));
  for (long& v : c) v = static_cast<long>(testutil::random_mpz_below(mpz_class(p)).get_ui());
  return PrimePoly(p, std::move(c));
}

PrimePoly random_nonzero_poly(long p, int max_degree) {
  while (true) {
    PrimePoly f = random_poly(p, max_degree);
    if (!f.is_zero()) return f;
  }
}

// trial-division irreducibility for small degrees, independent of the
// Rabin-style test in the library
bool brute_irreducible(const PrimePoly& f) {
  long p = f.p();
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (long long n = 0; n < total; ++n) {
      std::vector<long> lower(static_cast<size_t>(d));
      long long v = n;
      for (int i = 0; i < d; ++i) {
        lower[static_cast<size_t>(i)] = static_cast<long>(v % p);
        v /= p;
      }
      PrimePoly divisor = PrimePoly::monic_with(p, std::move(lower), d);
      if ((f % divisor).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("polynomial normalization and accessors") {
  PrimePoly f(3, {4, -1, 3, 2, 0, 0});  // 2x^3 + 2x + 1 after reduction
  CHECK(f.degree() == 3);
  CHECK(f.coeff(0) == 1);
  CHECK(f.coeff(1) == 2);
  CHECK(f.coeff(2) == 0);
  CHECK(f.coeff(3) == 2);
  CHECK(f.coeff(7) == 0);
  CHECK(f.leading() == 2);
  CHECK_FALSE(f.is_monic());
  CHECK(f.monic().leading() == 1);
  CHECK(f.str() == "2x^3 + 2x + 1");
  CHECK(PrimePoly::zero(3).degree() == -1);
  CHECK(PrimePoly::zero(3).str() == "0");
  CHECK(PrimePoly::x(3).str() == "x");
  CHECK_THROWS_AS(PrimePoly(4, {1}), std::invalid_argument);
}

TEST_CASE("ring laws on random polynomials") {
  for (long p : {3L, 5L}) {
    for (int trial = 0; trial < 40; ++trial) {
      PrimePoly a = random_poly(p, 6), b = random_poly(p, 6), c = random_poly(p, 6);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == PrimePoly::zero(p));
      // derivative product rule
      CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
      // evaluation is a ring homomorphism
      long x = static_cast<long>(testutil::random_mpz_below(mpz_class(p)).get_ui());
      CHECK((a * b).eval(x) == a.eval(x) * b.eval(x) % p);
      CHECK((a + b).eval(x) == (a.eval(x) + b.eval(x)) % p);
    }
  }
}

TEST_CASE("division with remainder and exact division") {
  for (int trial = 0; trial < 60; ++trial) {
    PrimePoly a = random_poly(3, 9);
    PrimePoly b = random_nonzero_poly(3, 4);
    iwasawa::PolyDivMod dm = a.divmod(b);
    CHECK(dm.quotient * b + dm.remainder == a);
    CHECK(dm.remainder.degree() < b.degree());
    CHECK((a * b) / b == a);
  }
  CHECK_THROWS_AS(PrimePoly::x(3).divmod(PrimePoly::zero(3)), iwasawa::arithmetic_error);
  CHECK_THROWS_AS(PrimePoly(3, {1, 1}) / PrimePoly(3, {0, 1}), iwasawa::arithmetic_error);
}

TEST_CASE("gcd is the monic greatest common divisor") {
  PrimePoly x = PrimePoly::x(3);
  PrimePoly f = (x + PrimePoly::constant(3, 1)) * (x + PrimePoly::constant(3, 2));
  PrimePoly g = (x + PrimePoly::constant(3, 1)) * x;
  PrimePoly d = poly_gcd(f, g);
  CHECK(d == x + PrimePoly::constant(3, 1));
  for (int trial = 0; trial < 40; ++trial) {
    PrimePoly a = random_nonzero_poly(3, 5);
    PrimePoly b = random_nonzero_poly(3, 5);
    PrimePoly h = random_nonzero_poly(3, 3);
    PrimePoly dd = poly_gcd(a * h, b * h);
    CHECK(dd.is_monic());
    CHECK(((a * h) % dd).is_zero());
    CHECK(((b * h) % dd).is_zero());
    CHECK((dd % h.monic()).is_zero());
  }
  CHECK(poly_gcd(PrimePoly::zero(3), f) == f.monic());
}

TEST_CASE("irreducibility matches trial division and the counting formula") {
  // #monic irreducibles of degree d over F_3: 3, 3, 8, 18, 48
  const std::vector<long long> expected{3, 3, 8, 18, 48};
  for (int d = 1; d <= 5; ++d) {
    long long count = 0;
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= 3;
    for (long long n = 0; n < total; ++n) {
      std::vector<long> lower(static_cast<size_t>(d));
      long long v = n;
      for (int i = 0; i < d; ++i) {
        lower[static_cast<size_t>(i)] = static_cast<long>(v % 3);
        v /= 3;
      }
      PrimePoly cand = PrimePoly::monic_with(3, std::move(lower), d);
      bool irr = is_irreducible(cand);
      if (d <= 4) CHECK(irr == brute_irreducible(cand));
      if (irr) ++count;
    }
    CHECK(count == expected[static_cast<size_t>(d - 1)]);
  }
}

TEST_CASE("deterministic least irreducible polynomials") {
  CHECK(iwasawa::least_irreducible(3, 1) == PrimePoly::x(3));
  CHECK(iwasawa::least_irreducible(3, 2) == PrimePoly(3, {1, 0, 1}));      // x^2+1
  CHECK(iwasawa::least_irreducible(3, 3) == PrimePoly(3, {1, 2, 0, 1}));  // x^3+2x+1
  CHECK(iwasawa::least_irreducible(5, 2) == PrimePoly(5, {2, 0, 1}));     // x^2+2
}

TEST_CASE("p-th roots and squarefree detection") {
  for (int trial = 0; trial < 30; ++trial) {
    PrimePoly f = random_nonzero_poly(3, 4);
    PrimePoly cube = f * f * f;
    CHECK(cube.derivative().is_zero());
    CHECK(iwasawa::pth_root(cube) == f);
  }
  CHECK_THROWS_AS(iwasawa::pth_root(PrimePoly(3, {1, 1})), std::invalid_argument);
  PrimePoly x = PrimePoly::x(3);
  PrimePoly sq = (x + PrimePoly::constant(3, 1)) * (x + PrimePoly::constant(3, 1));
  CHECK_FALSE(is_squarefree(sq));
  CHECK(is_squarefree(x * (x + PrimePoly::constant(3, 1))));
}

TEST_CASE("odd-multiplicity part against assembled factorizations") {
  const std::vector<PrimePoly> primes{
      PrimePoly(3, {0, 1}),          // x
      PrimePoly(3, {1, 1}),          // x+1
      PrimePoly(3, {2, 1}),          // x+2
      PrimePoly(3, {1, 0, 1}),       // x^2+1
      PrimePoly(3, {2, 1, 1}),       // x^2+x+2
      PrimePoly(3, {1, 2, 0, 1})};   // x^3+2x+1
  for (const PrimePoly& q : primes) REQUIRE(is_irreducible(q));
  for (int trial = 0; trial < 60; ++trial) {
    PrimePoly f = PrimePoly::constant(3, 1);
    PrimePoly expected = PrimePoly::constant(3, 1);
    for (const PrimePoly& q : primes) {
      int e = static_cast<int>(testutil::random_mpz_below(mpz_class(5)).get_ui());
      for (int i = 0; i < e; ++i) f = f * q;
      if (e % 2 == 1) expected = expected * q;
    }
    long unit = 1 + static_cast<long>(testutil::random_mpz_below(mpz_class(2)).get_ui());
    f = f.scaled(unit);
    CHECK(iwasawa::odd_multiplicity_part(f) == expected);
    CHECK(iwasawa::is_perfect_square(f) == (expected.degree() == 0 && unit == 1));
  }
  // perfect squares need a square leading unit too
  PrimePoly g(3, {1, 1});
  CHECK(iwasawa::is_perfect_square(g * g));
  CHECK_FALSE(iwasawa::is_perfect_square((g * g).scaled(2)));
  CHECK(iwasawa::is_perfect_square(PrimePoly::constant(5, 4)));
  CHECK_FALSE(iwasawa::is_perfect_square(PrimePoly::constant(5, 2)));
}

TEST_CASE("the nine-element field has the expected tables") {
  const GaloisField& f9 = GaloisField::get(3, 2);
  CHECK(f9.q() == 9);
  CHECK(f9.modulus() == PrimePoly(3, {1, 0, 1}));
  CHECK(&f9 == &GaloisField::get(3, 2));  // cached instance
  // the prime subfield sits at indices 0..2 and behaves like Z/3
  for (uint32_t a = 0; a < 3; ++a)
    for (uint32_t b = 0; b < 3; ++b) {
      CHECK(f9.add(a, b) == (a + b) % 3);
      CHECK(f9.mul(a, b) == a * b % 3);
    }
  // Frobenius is additive; Fermat holds; inverses invert
  for (uint32_t a = 0; a < 9; ++a) {
    CHECK(f9.pow(a, 9) == a);
    if (a != 0) CHECK(f9.mul(a, f9.inverse(a)) == 1);
    for (uint32_t b = 0; b < 9; ++b) {
      CHECK(f9.pow(f9.add(a, b), 3) == f9.add(f9.pow(a, 3), f9.pow(b, 3)));
      CHECK(f9.mul(a, b) == f9.mul(b, a));
    }
  }
  // squares: zero plus half the units
  int squares = 0;
  for (uint32_t a = 0; a < 9; ++a)
    if (f9.is_square(a)) ++squares;
  CHECK(squares == 5);
  // every element of the prime subfield becomes a square upstairs
  CHECK(f9.is_square(2));
  // index 3 is the class of x, whose square is -1 = 2 modulo x^2+1
  CHECK(f9.mul(3, 3) == 2);
}

TEST_CASE("table multiplication agrees with polynomial arithmetic") {
  for (int k : {2, 3, 4, 5}) {
    const GaloisField& field = GaloisField::get(3, k);
    auto to_poly = [&](uint32_t idx) {
      std::vector<long> c(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) {
        c[static_cast<size_t>(i)] = static_cast<long>(idx % 3);
        idx /= 3;
      }
      return PrimePoly(3, std::move(c));
    };
    auto to_index = [&](const PrimePoly& f) {
      uint32_t idx = 0;
      for (int i = k - 1; i >= 0; --i) idx = static_cast<uint32_t>(idx * 3 + f.coeff(i));
      return idx;
    };
    for (int trial = 0; trial < 120; ++trial) {
      uint32_t a = static_cast<uint32_t>(
          testutil::random_mpz_below(mpz_class(static_cast<long>(field.q()))).get_ui());
      uint32_t b = static_cast<uint32_t>(
          testutil::random_mpz_below(mpz_class(static_cast<long>(field.q()))).get_ui());
      CHECK(field.mul(a, b) == to_index((to_poly(a) * to_poly(b)) % field.modulus()));
      CHECK(field.add(a, b) == to_index(to_poly(a) + to_poly(b)));
      CHECK(field.add_small(a, 2) == field.add(a, 2));
      CHECK(field.pow(a, static_cast<long long>(field.q())) == a);  // Fermat
    }
    // Horner evaluation against direct power expansion
    for (int trial = 0; trial < 20; ++trial) {
      PrimePoly f = random_poly(3, 6);
      uint32_t x = static_cast<uint32_t>(
          testutil::random_mpz_below(mpz_class(static_cast<long>(field.q()))).get_ui());
      uint32_t direct = 0;
      for (int i = 0; i <= f.degree(); ++i)
        direct = field.add(direct, field.mul(static_cast<uint32_t>(f.coeff(i)),
                                             field.pow(x, i)));
      CHECK(field.eval(f, x) == direct);
    }
  }
}

TEST_CASE("field edge cases") {
  const GaloisField& f27 = GaloisField::get(3, 3);
  CHECK(f27.q() == 27);
  CHECK(f27.modulus() == PrimePoly(3, {1, 2, 0, 1}));
  CHECK(f27.pow(0, 0) == 1);
  CHECK(f27.pow(0, 5) == 0);
  CHECK(f27.pow(5, 0) == 1);
  CHECK_THROWS_AS(f27.inverse(0), iwasawa::arithmetic_error);
  CHECK_THROWS_AS(GaloisField::get(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(GaloisField::get(3, 0), std::invalid_argument);
  // generator really has full order
  const GaloisField& f81 = GaloisField::get(3, 4);
  std::set<uint32_t> powers;
  uint32_t cur = 1;
  for (int i = 0; i < 80; ++i) {
    powers.insert(cur);
    cur = f81.mul(cur, f81.generator());
  }
  CHECK(cur == 1);
  CHECK(powers.size() == 80);
}
