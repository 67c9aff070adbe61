#include "iwasawa/function_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"

using iwasawa::PrimePoly;

namespace {

// integer-only affine count over the prime field, independent of GaloisField
long long brute_count_prime_field(const PrimePoly& f) {
  long p = f.p();
  long long affine = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (y * y % p == f.eval(x)) ++affine;
  long long infinity;
  if (f.degree() % 2 == 1) {
    infinity = 1;
  } else {
    long lc = f.leading();
    bool square = false;
    for (long y = 0; y < p; ++y)
      if (y * y % p == lc) square = true;
    infinity = square ? 2 : 0;
  }
  return affine + infinity;
}

int valuation3(const mpz_class& n) {
  REQUIRE(n != 0);
  mpz_class v = n;
  int e = 0;
  while (v % 3 == 0) {
    v /= 3;
    ++e;
  }
  return e;
}

PrimePoly family_poly(const std::vector<long>& c1_to_c6) {
  std::vector<long> coeffs{0};
  coeffs.insert(coeffs.end(), c1_to_c6.begin(), c1_to_c6.end());
  coeffs.push_back(1);
  return PrimePoly(3, std::move(coeffs));
}

}  // namespace

TEST_CASE("point counts match an independent prime-field brute force") {
  for (int trial = 0; trial < 40; ++trial) {
    int deg = 1 + static_cast<int>(testutil::random_mpz_below(mpz_class(6)).get_ui());
    std::vector<long> c(static_cast<size_t>(deg + 1));
    for (long& v : c) v = static_cast<long>(testutil::random_mpz_below(mpz_class(3)).get_ui());
    if (c.back() == 0) c.back() = 1;
    PrimePoly f(3, std::move(c));
    CHECK(iwasawa::point_count(f, 1) == brute_count_prime_field(f));
  }
  // y^2 = x: (0,0), (1,1), (1,2), infinity
  CHECK(iwasawa::point_count(PrimePoly::x(3), 1) == 4);
}

TEST_CASE("worked elliptic example: y^2 = x^3 + 2x + 1 over F_3") {
  PrimePoly f(3, {1, 2, 0, 1});
  iwasawa::HyperellipticModel model = iwasawa::hyperelliptic_model(f);
  CHECK(model.genus == 1);
  CHECK(iwasawa::point_count(f, 1) == 7);
  iwasawa::ZetaData z = iwasawa::class_number(f);
  CHECK(z.q == 3);
  CHECK(z.genus == 1);
  REQUIRE(z.numerator.size() == 3);
  CHECK(z.numerator[0] == 1);
  CHECK(z.numerator[1] == 3);
  CHECK(z.numerator[2] == 3);
  CHECK(z.class_number == 7);
  // the numerator predicts every higher count, here checked directly
  for (int k = 2; k <= 5; ++k)
    CHECK(iwasawa::predicted_point_count(z, k) == iwasawa::point_count(f, k));
}

TEST_CASE("genus zero curves have class number one") {
  CHECK(iwasawa::class_number(PrimePoly::x(3)).class_number == 1);
  CHECK(iwasawa::class_number(PrimePoly(3, {1, 0, 1})).class_number == 1);
  CHECK(iwasawa::class_number(PrimePoly(5, {2, 1})).class_number == 1);
}

TEST_CASE("higher-genus zeta data is internally consistent and Weil-bounded") {
  // first squarefree monic quintic: genus 2
  PrimePoly f = PrimePoly::zero(3);
  for (long long n = 0; n < 243; ++n) {
    std::vector<long> lower(5);
    long long v = n;
    for (int i = 0; i < 5; ++i) {
      lower[static_cast<size_t>(i)] = static_cast<long>(v % 3);
      v /= 3;
    }
    PrimePoly cand = PrimePoly::monic_with(3, std::move(lower), 5);
    if (is_squarefree(cand)) {
      f = cand;
      break;
    }
  }
  REQUIRE(f.degree() == 5);
  iwasawa::ZetaData z = iwasawa::class_number(f);
  CHECK(z.genus == 2);
  CHECK(z.numerator.size() == 5);
  // functional equation: a_{2g} = q^g, a_3 = q a_1
  CHECK(z.numerator[4] == 9);
  CHECK(z.numerator[3] == 3 * z.numerator[1]);
  for (int k = 3; k <= 5; ++k)
    CHECK(iwasawa::predicted_point_count(z, k) == iwasawa::point_count(f, k));
  long long qk = 1;
  for (int k = 1; k <= 5; ++k) {
    qk *= 3;
    long double bound = 2.0L * z.genus * std::sqrt(static_cast<long double>(qk)) + 1e-6L;
    long long nk = iwasawa::point_count(f, k);
    CHECK(std::llabs(nk - (qk + 1)) <= static_cast<long long>(bound) + 1);
  }
  CHECK_THROWS_AS(iwasawa::class_number(PrimePoly(3, {0, 0, 1})), std::invalid_argument);
}

TEST_CASE("reversal swaps ends and is an involution on the family domain") {
  PrimePoly h(3, {0, 2, 0, 0, 0, 0, 0, 1});  // x^7 + 2x
  PrimePoly rev = iwasawa::reversal(h);
  CHECK(rev == PrimePoly(3, {0, 1, 0, 0, 0, 0, 0, 2}));  // 2x^7 + x
  CHECK(iwasawa::reversal(rev) == h);
}

TEST_CASE("the degree-7 family enumeration") {
  std::vector<PrimePoly> family = iwasawa::enumerate_h(3, 7);
  CHECK(family.size() == 189);

  // independent recount of the pre-deduplication pool
  long long squarefree_candidates = 0;
  for (long long n = 0; n < 729; ++n) {
    std::vector<long> lower(7, 0);
    long long v = n;
    for (int i = 1; i <= 6; ++i) {
      lower[static_cast<size_t>(i)] = static_cast<long>(v % 3);
      v /= 3;
    }
    PrimePoly cand = PrimePoly::monic_with(3, std::move(lower), 7);
    if (is_squarefree(cand)) ++squarefree_candidates;
  }
  CHECK(squarefree_candidates == 364);

  CHECK(std::is_sorted(family.begin(), family.end()));
  std::set<PrimePoly> members(family.begin(), family.end());
  CHECK(members.size() == family.size());
  long long self_paired = 0;
  for (const PrimePoly& h : family) {
    CHECK(h.is_monic());
    CHECK(h.degree() == 7);
    CHECK(h.coeff(0) == 0);
    CHECK(h.coeff(1) != 0);
    CHECK(is_squarefree(h));
    PrimePoly partner = iwasawa::reversal(h).monic();
    CHECK_FALSE(partner < h);  // kept representative is the smaller one
    if (partner == h) {
      ++self_paired;
    } else {
      CHECK(members.count(partner) == 0);
    }
  }
  CHECK(self_paired == 14);
  CHECK(2 * (family.size() - static_cast<size_t>(self_paired)) + self_paired == 364);
}

TEST_CASE("class numbers are invariant under unnormalized reversal") {
  std::vector<PrimePoly> family = iwasawa::enumerate_h(3, 7);
  int checked = 0;
  for (const PrimePoly& h : family) {
    PrimePoly rev = iwasawa::reversal(h);
    if (rev == h) continue;
    // x -> 1/x scales y^2 = h by the square x^8, so the field is unchanged
    CHECK(iwasawa::class_number(h).class_number ==
          iwasawa::class_number(rev).class_number);
    if (++checked == 10) break;
  }
  CHECK(checked == 10);
}

TEST_CASE("the pullback polynomial satisfies its defining identity") {
  std::vector<PrimePoly> family = iwasawa::enumerate_h(3, 7);
  const iwasawa::GaloisField& f9 = iwasawa::GaloisField::get(3, 2);
  const iwasawa::GaloisField& f27 = iwasawa::GaloisField::get(3, 3);
  for (size_t idx = 0; idx < family.size(); idx += 23) {
    const PrimePoly& h = family[idx];
    PrimePoly big = iwasawa::pullback_polynomial(h);
    CHECK(big.degree() == 21);
    // u = t^p - t divides H exactly once: H vanishes on F_3, H/u does not
    PrimePoly u(3, {0, -1, 0, 1});
    PrimePoly ratio = big / u;
    for (long t = 0; t < 3; ++t) {
      CHECK(big.eval(t) == 0);
      CHECK(ratio.eval(t) != 0);
    }
    // H(t) = u(t)^8 * h(-1/u(t)) wherever u(t) is invertible
    for (const iwasawa::GaloisField* field : {&f9, &f27}) {
      for (uint32_t t = 0; t < field->q(); ++t) {
        uint32_t ut = field->eval(u, t);
        if (ut == 0) continue;
        uint32_t lhs = field->eval(big, t);
        uint32_t arg = field->neg(field->inverse(ut));
        uint32_t rhs = field->mul(field->pow(ut, 8), field->eval(h, arg));
        CHECK(lhs == rhs);
      }
    }
  }
  CHECK_THROWS_AS(iwasawa::pullback_polynomial(PrimePoly(3, {1, 1})),
                  std::invalid_argument);
}

TEST_CASE("the layer model strips exactly the square part of the pullback") {
  std::vector<PrimePoly> family = iwasawa::enumerate_h(3, 7);
  for (size_t idx = 0; idx < family.size(); idx += 17) {
    const PrimePoly& h = family[idx];
    PrimePoly big = iwasawa::pullback_polynomial(h);
    iwasawa::HyperellipticModel layer = iwasawa::first_layer_model(h);
    CHECK(layer.f.degree() % 2 == 1);
    CHECK(layer.f.degree() == 2 * layer.genus + 1);
    CHECK(layer.genus <= 10);
    CHECK(is_squarefree(layer.f));
    PrimePoly square_part = big / layer.f;  // throws if not exact
    CHECK(iwasawa::is_perfect_square(square_part));
  }
}

TEST_CASE("frozen layer records recompute identically") {
  std::ifstream in(testutil::test_data_dir() + "/golden/first_layer_records.txt");
  REQUIRE(in.good());
  std::set<PrimePoly> members;
  for (const PrimePoly& h : iwasawa::enumerate_h(3, 7)) members.insert(h);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<long> c(6);
    int deg_layer, e0, e1;
    long h0, h1;
    for (long& v : c) row >> v;
    row >> deg_layer >> h0 >> e0 >> h1 >> e1;
    REQUIRE(row);
    PrimePoly h = family_poly(c);
    CHECK(members.count(h) == 1);
    iwasawa::ZetaData base = iwasawa::class_number(h);
    CHECK(base.class_number == h0);
    CHECK((e0 == 0 ? base.class_number % 3 != 0 : valuation3(base.class_number) == e0));
    iwasawa::HyperellipticModel layer = iwasawa::first_layer_model(h);
    CHECK(layer.f.degree() == deg_layer);
    iwasawa::ZetaData up = iwasawa::class_number(layer.f);
    CHECK(up.class_number == h1);
    CHECK((e1 == 0 ? up.class_number % 3 != 0 : valuation3(up.class_number) == e1));
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("order labels name every admissible shape") {
  CHECK(iwasawa::shape_label_for_order(3, 1, 2) == "9");
  CHECK(iwasawa::shape_label_for_order(3, 1, 3) == "9x3 or 3x3x3");
  CHECK(iwasawa::shape_label_for_order(3, 1, 4) == "9x9");
  CHECK(iwasawa::shape_label_for_order(3, 1, 5) == "27x9");
  CHECK(iwasawa::shape_label_for_order(3, 1, 6) == "27x27");
  CHECK(iwasawa::shape_label_for_order(3, 2, 3) == "27");
  CHECK_THROWS_AS(iwasawa::shape_label_for_order(3, 1, 1), std::invalid_argument);
}

TEST_CASE("predicted order distribution for a cyclic base of order 3") {
  std::map<int, mpq_class> dist = iwasawa::predicted_order_distribution(3, 1, 6);
  REQUIRE(dist.size() == 5);
  CHECK(dist.at(2) == mpq_class(2, 3));
  CHECK(dist.at(3) == mpq_class(2, 9));
  CHECK(dist.at(4) == mpq_class(2, 27));
  CHECK(dist.at(5) == mpq_class(2, 81));
  CHECK(dist.at(6) == mpq_class(2, 243));
  mpq_class total;
  for (const auto& [e1, share] : dist) total += share;
  CHECK(total + mpq_class(1, 243) == 1);
}

TEST_CASE("survey smoke test on a family prefix") {
  iwasawa::FFSurvey survey = iwasawa::survey_ff(3, 7, 20, 1);
  CHECK(survey.family_size == 189);
  CHECK(survey.surveyed == 20);
  CHECK(survey.records.size() == 20);
  long long total = 0;
  for (const auto& [e0, count] : survey.e0_hist) {
    (void)e0;
    total += count;
  }
  CHECK(total == 20);
  long long with_base = 0;
  for (const auto& [e0, count] : survey.e0_hist)
    if (e0 >= 1) with_base += count;
  CHECK(survey.divisible == with_base);
  long long e1_total = 0;
  for (const auto& [e1, count] : survey.e1_hist_e0_one) {
    CHECK(e1 >= 2);  // growth is forced when the base order is divisible
    e1_total += count;
  }
  long long base_once = survey.e0_hist.count(1) ? survey.e0_hist.at(1) : 0;
  CHECK(e1_total == base_once);
  for (const iwasawa::FirstLayerRecord& rec : survey.records) {
    CHECK(rec.h0 % iwasawa::pow_of(3, rec.e0) == 0);
    if (rec.e0 >= 1) {
      CHECK(rec.e1 >= rec.e0 + 1);
      if (rec.e0 == 1)
        CHECK(rec.label == iwasawa::shape_label_for_order(3, 1, rec.e1));
    } else {
      CHECK(rec.label == "-");
    }
  }
  CHECK(std::is_sorted(survey.records.begin(), survey.records.end(),
                       [](const iwasawa::FirstLayerRecord& a,
                          const iwasawa::FirstLayerRecord& b) { return a.h < b.h; }));
  // thread split does not change the output
  iwasawa::FFSurvey parallel = iwasawa::survey_ff(3, 7, 20, 3);
  REQUIRE(parallel.records.size() == survey.records.size());
  for (size_t i = 0; i < survey.records.size(); ++i) {
    CHECK(parallel.records[i].h == survey.records[i].h);
    CHECK(parallel.records[i].h1 == survey.records[i].h1);
    CHECK(parallel.records[i].label == survey.records[i].label);
  }
  CHECK(parallel.e0_hist == survey.e0_hist);
}
