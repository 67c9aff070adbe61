#include "iwasawa/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "iwasawa/padic.hpp"

namespace iwasawa {

namespace {

constexpr long long kTrialDivisionBound = 10000;

const std::vector<long long>& small_primes() {
  static const std::vector<long long> primes = [] {
    std::vector<bool> sieve(kTrialDivisionBound + 1, true);
    std::vector<long long> out;
    for (long long i = 2; i <= kTrialDivisionBound; ++i) {
      if (!sieve[static_cast<size_t>(i)]) continue;
      out.push_back(i);
      for (long long k = i * i; k <= kTrialDivisionBound; k += i)
        sieve[static_cast<size_t>(k)] = false;
    }
    return out;
  }();
  return primes;
}

// squarefree for n <= budget: strip primes <= 10^4, then the cofactor has at
// most two prime factors, so only a perfect square can spoil it
bool certified_squarefree(long long n) {
  for (long long q : small_primes()) {
    if (q * q > n) break;
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return false;
    }
  }
  if (n > 1) {
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    if (s * s == n) return false;
  }
  return true;
}

long long mod_floor(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

// extended gcd, g = u x + v y with g >= 0
long long xgcd(long long x, long long y, long long& u, long long& v) {
  long long old_r = x, r = y, old_u = 1, uu = 0, old_v = 0, vv = 1;
  while (r != 0) {
    long long q = old_r / r;
    long long t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_u - q * uu;
    old_u = uu;
    uu = t;
    t = old_v - q * vv;
    old_v = vv;
    vv = t;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_u = -old_u;
    old_v = -old_v;
  }
  u = old_u;
  v = old_v;
  return old_r;
}

long long checked_ll(__int128 x, const char* where) {
  if (x > static_cast<__int128>(9e18) || x < -static_cast<__int128>(9e18))
    throw arithmetic_error(std::string("quadform: overflow in ") + where);
  return static_cast<long long>(x);
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

bool QuadForm::is_reduced() const {
  long long ab = b < 0 ? -b : b;
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

bool is_fundamental(long long d) {
  require(d < 0, "is_fundamental: d must be negative");
  if (-d > kDiscriminantBudget)
    throw std::invalid_argument("is_fundamental: |d| beyond certified squarefree budget");
  long long m4 = mod_floor(d, 4);
  if (m4 == 1) return certified_squarefree(-d);
  if (m4 == 0) {
    long long q = d / 4;
    long long qm4 = mod_floor(q, 4);
    if (qm4 != 2 && qm4 != 3) return false;
    return certified_squarefree(-q);
  }
  return false;
}

int kronecker_symbol(long long d, long p) {
  require(is_odd_prime(p), "kronecker_symbol: p must be an odd prime");
  long long t = mod_floor(d, p);
  if (t == 0) return 0;
  // Euler's criterion
  long long result = 1, base = t, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

bool p_nonsplit(long long d, long p) { return kronecker_symbol(d, p) != 1; }

QuadForm identity_form(long long d) {
  require(d < 0, "identity_form: d must be negative");
  if (mod_floor(d, 4) == 1) return {1, 1, (1 - d) / 4};
  require(mod_floor(d, 4) == 0, "identity_form: d must be 0 or 1 mod 4");
  return {1, 0, -d / 4};
}

QuadForm reduce(QuadForm f) {
  long long d = f.discriminant();
  require(d < 0 && f.a > 0, "reduce: form must be positive definite");
  while (true) {
    // normalize b into (-a, a]
    long long t = mod_floor(f.b, 2 * f.a);
    if (t > f.a) t -= 2 * f.a;
    if (t != f.b) {
      __int128 c2 = (static_cast<__int128>(t) * t - d) / (4 * f.a);
      f.b = t;
      f.c = checked_ll(c2, "reduce");
    }
    if (f.c < f.a) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.c == f.a && f.b < 0) f.b = -f.b;
    return f;
  }
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  long long d = f.discriminant();
  require(d == g.discriminant(), "compose: mismatched discriminants");

  long long s = (f.b + g.b) / 2;
  long long u1 = 0, v1 = 0, u2 = 0, w = 0;
  long long g1 = xgcd(f.a, g.a, u1, v1);
  long long e = xgcd(g1, s, u2, w);

  long long big_a = checked_ll(static_cast<__int128>(f.a / e) * (g.a / e), "compose A");
  __int128 n = static_cast<__int128>(u2) * u1 * f.a * g.b +
               static_cast<__int128>(u2) * v1 * g.a * f.b +
               static_cast<__int128>(w) * ((static_cast<__int128>(f.b) * g.b + d) / 2);
  if (n % e != 0) throw arithmetic_error("compose: inconsistent Bezout data");
  __int128 two_a = 2 * static_cast<__int128>(big_a);
  __int128 b128 = (n / e) % two_a;
  if (b128 < 0) b128 += two_a;
  long long big_b = checked_ll(b128, "compose B");

  __int128 c_num = static_cast<__int128>(big_b) * big_b - d;
  if (c_num % (4 * static_cast<__int128>(big_a)) != 0)
    throw arithmetic_error("compose: discriminant broke");
  long long big_c = checked_ll(c_num / (4 * static_cast<__int128>(big_a)), "compose C");

  return reduce({big_a, big_b, big_c});
}

QuadForm inverse_form(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

QuadForm power_form(const QuadForm& f, long long e) {
  require(e >= 0, "power_form: exponent must be >= 0");
  QuadForm acc = identity_form(f.discriminant());
  QuadForm base = reduce(f);
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

std::vector<QuadForm> reduced_forms(long long d) {
  require(d < 0, "reduced_forms: d must be negative");
  long long m4 = mod_floor(d, 4);
  require(m4 == 0 || m4 == 1, "reduced_forms: d must be 0 or 1 mod 4");
  std::vector<QuadForm> out;
  for (long long a = 1; 3 * a * a <= -d; ++a) {
    long long b0 = mod_floor(d, 2);  // b = d mod 2
    for (long long b = -a + 1 + mod_floor(b0 - (-a + 1), 2); b <= a; b += 2) {
      long long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if ((b < 0) && (a == c || -b == a)) continue;  // other representative counted
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int exact_log(long p, long long value) {
  int e = 0;
  while (value > 1) {
    if (value % p != 0) throw arithmetic_error("class_group: subgroup order not a p-power");
    value /= p;
    ++e;
  }
  return e;
}

// shape from the chain of p^k-power image sizes, L[k] = log_p |S^(p^k)|
AbelianPGroupShape shape_from_power_orders(const std::vector<int>& big_l) {
  std::vector<int> exps;
  for (size_t k = 1; k < big_l.size(); ++k) {
    int above_prev = big_l[k - 1] - big_l[k];
    int above = (k + 1 < big_l.size()) ? big_l[k] - big_l[k + 1] : 0;
    for (int c = 0; c < above_prev - above; ++c) exps.push_back(static_cast<int>(k));
  }
  return AbelianPGroupShape(std::move(exps));
}

}  // namespace

ClassGroupResult class_group(long long d, long p) {
  require(is_odd_prime(p), "class_group: p must be an odd prime");
  if (!is_fundamental(d)) throw std::invalid_argument("class_group: d must be fundamental");

  ClassGroupResult out;
  out.discriminant = d;
  out.p = p;
  std::vector<QuadForm> forms = reduced_forms(d);
  out.class_number = static_cast<long long>(forms.size());

  long long cofactor = out.class_number;
  int e = 0;
  while (cofactor % p == 0) {
    cofactor /= p;
    ++e;
  }
  if (e == 0) return out;  // trivial Sylow, shape stays empty

  std::set<QuadForm> sylow;
  for (const QuadForm& f : forms) sylow.insert(power_form(f, cofactor));
  if (mpz_class(static_cast<unsigned long>(sylow.size())) != pow_of(p, e))
    throw arithmetic_error("class_group: Sylow image size disagrees with the p-part of h");

  std::vector<int> big_l{e};
  std::set<QuadForm> cur = std::move(sylow);
  while (big_l.back() > 0) {
    std::set<QuadForm> next;
    for (const QuadForm& f : cur) next.insert(power_form(f, p));
    big_l.push_back(exact_log(p, static_cast<long long>(next.size())));
    cur = std::move(next);
  }
  out.p_sylow_shape = shape_from_power_orders(big_l);
  return out;
}

int discriminant_prime_factors(long long d) {
  require(d < 0, "discriminant_prime_factors: d must be negative");
  long long n = -d;
  int count = 0;
  for (long long q : small_primes()) {
    if (q * q > n) break;
    if (n % q == 0) {
      ++count;
      while (n % q == 0) n /= q;
    }
  }
  // a cofactor has no factor <= 10^4, and two such factors would exceed the
  // 10^8 budget, so anything left is a single prime
  if (n > 1) ++count;
  return count;
}

QuadSurveyResult survey_quad(long p, int family, long long min_abs, long long max_abs,
                             int jobs) {
  require(is_odd_prime(p), "survey_quad: p must be an odd prime");
  require(family >= 0 && family < p, "survey_quad: family must be a residue class mod p");
  require(min_abs >= 1 && min_abs <= max_abs, "survey_quad: bad range");
  require(max_abs <= kDiscriminantBudget, "survey_quad: range beyond discriminant budget");
  require(jobs >= 1, "survey_quad: jobs must be >= 1");
  if (family != 0 && kronecker_symbol(family, p) == 1)
    throw std::invalid_argument("survey_quad: family is a split residue class for this p");

  auto scan = [p, family](long long lo, long long hi, QuadSurveyResult& acc) {
    for (long long n = lo; n <= hi; ++n) {
      long long d = -n;
      if (mod_floor(d, p) != family) continue;
      if (n == 3 || n == 4) {
        ++acc.trivial_excluded;
        continue;
      }
      if (!is_fundamental(d)) continue;
      ClassGroupResult r = class_group(d, p);
      ++acc.surveyed;
      if (r.p_sylow_shape.is_trivial())
        ++acc.coprime;
      else if (r.p_sylow_shape.is_cyclic())
        ++acc.cyclic_by_m[r.p_sylow_shape.max_exponent()];
      else
        ++acc.noncyclic;
      acc.records.push_back(std::move(r));
    }
  };

  QuadSurveyResult out;
  out.p = p;
  out.family = family;
  out.min_abs = min_abs;
  out.max_abs = max_abs;

  int workers = static_cast<int>(std::min<long long>(jobs, max_abs - min_abs + 1));
  std::vector<QuadSurveyResult> parts(static_cast<size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  std::vector<std::thread> threads;
  long long total = max_abs - min_abs + 1;
  for (int w = 0; w < workers; ++w) {
    long long lo = min_abs + total * w / workers;
    long long hi = min_abs + total * (w + 1) / workers - 1;
    threads.emplace_back([&, w, lo, hi] {
      try {
        scan(lo, hi, parts[static_cast<size_t>(w)]);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  for (QuadSurveyResult& part : parts) {
    out.surveyed += part.surveyed;
    out.trivial_excluded += part.trivial_excluded;
    out.coprime += part.coprime;
    out.noncyclic += part.noncyclic;
    for (const auto& [m, count] : part.cyclic_by_m) out.cyclic_by_m[m] += count;
    for (ClassGroupResult& r : part.records) out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace iwasawa
