#include "iwasawa/function_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <thread>

#include "iwasawa/classification.hpp"
#include "iwasawa/heuristics.hpp"

namespace iwasawa {

namespace {

int valuation_of(mpz_class n, long p) {
  if (n == 0) throw arithmetic_error("valuation_of: zero");
  int v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= static_cast<unsigned long>(p);
    ++v;
  }
  return v;
}

// all reciprocal roots of the numerator must sit on |alpha| = sqrt(q);
// verified by locating the roots of P(T) (moduli 1/sqrt(q)) numerically
void check_root_moduli(const std::vector<mpz_class>& a, long long q) {
  int n = static_cast<int>(a.size()) - 1;
  std::vector<std::complex<double>> c(a.size());
  double lead = a.back().get_d();
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i].get_d() / lead;
  std::vector<std::complex<double>> z(static_cast<size_t>(n));
  std::complex<double> seed(0.4, 0.9);
  z[0] = seed;
  for (int i = 1; i < n; ++i) z[static_cast<size_t>(i)] = z[static_cast<size_t>(i - 1)] * seed;
  for (int iter = 0; iter < 2000; ++iter) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> zi = z[static_cast<size_t>(i)];
      std::complex<double> val = c[static_cast<size_t>(n)];
      for (int j = n - 1; j >= 0; --j) val = val * zi + c[static_cast<size_t>(j)];
      std::complex<double> denom(1, 0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= zi - z[static_cast<size_t>(j)];
      std::complex<double> step = val / denom;
      z[static_cast<size_t>(i)] = zi - step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  double target = 1.0 / std::sqrt(static_cast<double>(q));
  for (int i = 0; i < n; ++i) {
    double m = std::abs(z[static_cast<size_t>(i)]);
    if (std::abs(m / target - 1.0) > 1e-6)
      throw arithmetic_error("class_number: a zeta root is off the critical circle");
  }
}

}  // namespace

HyperellipticModel hyperelliptic_model(PrimePoly f) {
  if (f.degree() < 1) throw std::invalid_argument("hyperelliptic_model: need deg f >= 1");
  if (!is_squarefree(f)) throw std::invalid_argument("hyperelliptic_model: f must be squarefree");
  int genus = (f.degree() - 1) / 2;
  return HyperellipticModel{std::move(f), genus};
}

long long point_count(const PrimePoly& f, int k) {
  if (f.degree() < 1) throw std::invalid_argument("point_count: need deg f >= 1");
  const GaloisField& field = GaloisField::get(f.p(), k);
  long long count = 0;
  for (long long x = 0; x < field.q(); ++x) {
    uint32_t z = field.eval(f, static_cast<uint32_t>(x));
    if (z == 0)
      count += 1;
    else if (field.is_square(z))
      count += 2;
  }
  if (f.degree() % 2 == 1)
    count += 1;
  else if (field.is_square(static_cast<uint32_t>(f.leading())))
    count += 2;
  return count;
}

ZetaData class_number(const PrimePoly& f) {
  if (!is_squarefree(f)) throw std::invalid_argument("class_number: f must be squarefree");
  ZetaData z;
  z.q = f.p();
  z.genus = (f.degree() - 1) / 2;
  int g = z.genus;
  z.numerator.assign(static_cast<size_t>(2 * g + 1), 0);
  z.numerator[0] = 1;
  if (g == 0) {
    z.class_number = 1;
    return z;
  }

  std::vector<mpz_class> s(static_cast<size_t>(g + 1));  // power sums of reciprocal roots
  mpz_class qk = 1;
  for (int k = 1; k <= g; ++k) {
    qk *= static_cast<long>(z.q);
    long long nk = point_count(f, k);
    z.point_counts.push_back(nk);
    s[static_cast<size_t>(k)] = qk + 1 - static_cast<long>(nk);
  }
  for (int k = 1; k <= g; ++k) {
    mpz_class acc = 0;
    for (int i = 1; i <= k; ++i) acc += s[static_cast<size_t>(i)] * z.numerator[static_cast<size_t>(k - i)];
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(k)))
      throw arithmetic_error("class_number: Newton identity produced a non-integer coefficient");
    z.numerator[static_cast<size_t>(k)] = -acc / k;
  }
  mpz_class qpow = 1;  // q^{g-i} for the mirror half
  for (int i = g - 1; i >= 0; --i) {
    qpow *= static_cast<long>(z.q);
    z.numerator[static_cast<size_t>(2 * g - i)] = qpow * z.numerator[static_cast<size_t>(i)];
  }
  mpz_class h = 0;
  for (const mpz_class& a : z.numerator) h += a;
  z.class_number = h;

  long double rq = sqrtl(static_cast<long double>(z.q));
  long double lo = powl(rq - 1, 2 * g) * (1 - 1e-9L);
  long double hi = powl(rq + 1, 2 * g) * (1 + 1e-9L);
  long double hd = static_cast<long double>(h.get_d());
  if (h <= 0 || hd < lo || hd > hi)
    throw arithmetic_error("class_number: result escapes the Weil window");
  if (2 * g <= 8) check_root_moduli(z.numerator, z.q);
  return z;
}

long long predicted_point_count(const ZetaData& z, int k) {
  if (k < 1) throw std::invalid_argument("predicted_point_count: k >= 1");
  int n = 2 * z.genus;
  std::vector<mpz_class> s(static_cast<size_t>(k + 1));
  for (int j = 1; j <= k; ++j) {
    mpz_class acc = 0;
    for (int i = 1; i <= std::min(j - 1, n); ++i)
      acc += z.numerator[static_cast<size_t>(i)] * s[static_cast<size_t>(j - i)];
    if (j <= n) acc += j * z.numerator[static_cast<size_t>(j)];
    s[static_cast<size_t>(j)] = -acc;
  }
  mpz_class qk;
  mpz_class q(static_cast<long>(z.q));
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_class nk = qk + 1 - s[static_cast<size_t>(k)];
  return static_cast<long long>(nk.get_si());
}

PrimePoly reversal(const PrimePoly& h) {
  if (h.is_zero()) throw std::invalid_argument("reversal: zero polynomial");
  int d = h.degree();
  std::vector<long> c(static_cast<size_t>(d + 2), 0);
  for (int i = 0; i <= d; ++i) c[static_cast<size_t>(d + 1 - i)] = h.coeff(i);
  return PrimePoly(h.p(), std::move(c));
}

std::vector<PrimePoly> enumerate_h(long p, int degree) {
  if (degree < 1) throw std::invalid_argument("enumerate_h: degree >= 1");
  long long total = 1;
  for (int i = 1; i < degree; ++i) total *= p;
  std::vector<PrimePoly> kept;
  for (long long n = 0; n < total; ++n) {
    std::vector<long> lower(static_cast<size_t>(degree), 0);
    long long v = n;
    for (int i = 1; i < degree; ++i) {  // constant coefficient stays 0
      lower[static_cast<size_t>(i)] = static_cast<long>(v % p);
      v /= p;
    }
    PrimePoly h = PrimePoly::monic_with(p, std::move(lower), degree);
    if (!is_squarefree(h)) continue;
    PrimePoly partner = reversal(h).monic();
    if (partner < h) continue;  // the partner represents this field pair
    kept.push_back(std::move(h));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

PrimePoly pullback_polynomial(const PrimePoly& h) {
  long p = h.p();
  if (h.coeff(0) != 0) throw std::invalid_argument("pullback_polynomial: need h(0) = 0");
  int d = h.degree();
  // u = t^p - t; H(t) = u^{d+1} h(-1/u) = sum_i c_i (-1)^i u^{d+1-i}
  std::vector<long> uc(static_cast<size_t>(p + 1), 0);
  uc[1] = -1;
  uc[static_cast<size_t>(p)] = 1;
  PrimePoly u(p, std::move(uc));
  std::vector<PrimePoly> upow{PrimePoly::constant(p, 1)};
  for (int j = 1; j <= d + 1; ++j) upow.push_back(upow.back() * u);
  PrimePoly big = PrimePoly::zero(p);
  long sign = -1;  // (-1)^i starting at i = 1
  for (int i = 1; i <= d; ++i) {
    big = big + upow[static_cast<size_t>(d + 1 - i)].scaled(sign * h.coeff(i));
    sign = -sign;
  }
  return big;
}

HyperellipticModel first_layer_model(const PrimePoly& h) {
  if (!is_squarefree(h)) throw std::invalid_argument("first_layer_model: h must be squarefree");
  PrimePoly big = pullback_polynomial(h);
  if (big.is_zero()) throw arithmetic_error("first_layer_model: degenerate pullback");
  PrimePoly reduced = odd_multiplicity_part(big).scaled(big.leading());
  if (reduced.degree() == 0)
    throw arithmetic_error("first_layer_model: pullback is a square (degenerate layer)");
  return hyperelliptic_model(std::move(reduced));
}

std::string shape_label_for_order(long p, int m, int order_exponent) {
  int r = order_exponent - m;
  if (r < 1) throw std::invalid_argument("shape_label_for_order: order exponent must exceed m");
  std::string out;
  for (const EnumeratedShape& entry : theorem1_enumerate(p, m, order_exponent)) {
    if (entry.r != r) continue;
    if (!out.empty()) out += " or ";
    out += entry.shape.group_notation(p);
  }
  if (out.empty()) throw arithmetic_error("shape_label_for_order: no admissible shape");
  return out;
}

std::map<int, mpq_class> predicted_order_distribution(long p, int m, int max_exponent) {
  PredictedDistribution dist = predicted_a1_distribution(p, m, max_exponent - m);
  std::map<int, mpq_class> out;
  for (const PredictedShare& share : dist.shares) out[share.r + m] += share.probability;
  return out;
}

FFSurvey survey_ff(long p, int degree, long long first_n, int jobs) {
  if (jobs < 1) throw std::invalid_argument("survey_ff: jobs >= 1");
  FFSurvey out;
  out.p = p;
  out.degree = degree;
  std::vector<PrimePoly> family = enumerate_h(p, degree);
  out.family_size = static_cast<long long>(family.size());
  if (first_n >= 0 && first_n < out.family_size)
    family.erase(family.begin() + static_cast<std::ptrdiff_t>(first_n), family.end());
  out.surveyed = static_cast<long long>(family.size());

  // models first (cheap), so the needed fields can be built before threading
  std::vector<HyperellipticModel> layers;
  layers.reserve(family.size());
  int max_k = (degree - 1) / 2;
  for (const PrimePoly& h : family) {
    layers.push_back(first_layer_model(h));
    max_k = std::max(max_k, layers.back().genus);
  }
  for (int k = 1; k <= max_k; ++k) GaloisField::get(p, k);

  out.records.assign(family.size(), FirstLayerRecord{PrimePoly::zero(p), 0, 0, 0, 0, 0, ""});
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      FirstLayerRecord rec{family[i], 0, 0, 0, 0, layers[i].genus, "-"};
      rec.h0 = class_number(family[i]).class_number;
      rec.e0 = valuation_of(rec.h0, p);
      rec.h1 = class_number(layers[i].f).class_number;
      rec.e1 = valuation_of(rec.h1, p);
      if (rec.e0 >= 1) {
        if (rec.e1 < rec.e0 + 1)
          throw arithmetic_error("survey_ff: layer class number grew too slowly (e1 <= e0)");
        rec.label = shape_label_for_order(p, rec.e0, rec.e1);
      }
      out.records[i] = std::move(rec);
    }
  };
  if (jobs == 1 || family.size() < 2) {
    work(0, family.size());
  } else {
    size_t n = family.size();
    size_t workers = std::min(static_cast<size_t>(jobs), n);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = n * w / workers;
      size_t end = n * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (const FirstLayerRecord& rec : out.records) {
    out.e0_hist[rec.e0] += 1;
    if (rec.e0 >= 1) out.divisible += 1;
    if (rec.e0 == 1) out.e1_hist_e0_one[rec.e1] += 1;
  }
  return out;
}

}  // namespace iwasawa
