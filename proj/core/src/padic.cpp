#include "iwasawa/padic.hpp"

#include <algorithm>
#include <sstream>

namespace iwasawa {

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

mpz_class pow_of(long p, int e) {
  if (e < 0) throw std::invalid_argument("pow_of: negative exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e));
  return r;
}

PAdicInt::PAdicInt(long p, int precision, mpz_class value)
    : p_(p), n_(precision), v_(std::move(value)) {
  if (!is_odd_prime(p_)) throw std::invalid_argument("PAdicInt: p must be an odd prime");
  if (n_ < 1) throw std::invalid_argument("PAdicInt: precision must be >= 1");
  mpz_class mod = pow_of(p_, n_);
  v_ %= mod;
  if (v_ < 0) v_ += mod;
}

mpz_class PAdicInt::balanced_residue() const {
  mpz_class mod = modulus();
  if (2 * v_ > mod) return v_ - mod;
  return v_;
}

bool PAdicInt::is_unit() const { return mpz_divisible_ui_p(v_.get_mpz_t(), p_) == 0 && v_ != 0; }

int PAdicInt::valuation() const {
  if (v_ == 0) return n_;
  mpz_class t = v_;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p_)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p_);
    ++v;
  }
  return v;
}

void PAdicInt::check_compatible(const PAdicInt& o) const {
  if (p_ != o.p_ || n_ != o.n_)
    throw arithmetic_error("PAdicInt: mixed moduli (p=" + std::to_string(p_) + ",N=" +
                           std::to_string(n_) + ") vs (p=" + std::to_string(o.p_) + ",N=" +
                           std::to_string(o.n_) + ")");
}

PAdicInt PAdicInt::operator-() const {
  if (v_ == 0) return *this;
  PAdicInt r = *this;
  r.v_ = modulus() - v_;
  return r;
}

PAdicInt& PAdicInt::operator+=(const PAdicInt& o) {
  check_compatible(o);
  v_ += o.v_;
  mpz_class mod = modulus();
  if (v_ >= mod) v_ -= mod;
  return *this;
}

PAdicInt& PAdicInt::operator-=(const PAdicInt& o) {
  check_compatible(o);
  v_ -= o.v_;
  if (v_ < 0) v_ += modulus();
  return *this;
}

PAdicInt& PAdicInt::operator*=(const PAdicInt& o) {
  check_compatible(o);
  v_ *= o.v_;
  v_ %= modulus();
  return *this;
}

PAdicInt PAdicInt::inverse() const {
  if (!is_unit()) throw arithmetic_error("PAdicInt::inverse: not a unit");
  PAdicInt r = *this;
  mpz_class mod = modulus();
  if (!mpz_invert(r.v_.get_mpz_t(), v_.get_mpz_t(), mod.get_mpz_t()))
    throw arithmetic_error("PAdicInt::inverse: inversion failed");
  return r;
}

PAdicInt PAdicInt::unit_part() const {
  if (v_ == 0) throw arithmetic_error("PAdicInt::unit_part: zero has no unit part");
  return divide_exact_p_power(valuation());
}

PAdicInt PAdicInt::divide_exact_p_power(int k) const {
  if (k < 0 || k > n_) throw std::invalid_argument("divide_exact_p_power: bad exponent");
  if (valuation() < k) throw arithmetic_error("divide_exact_p_power: inexact division");
  PAdicInt r = *this;
  mpz_class pk = pow_of(p_, k);
  mpz_divexact(r.v_.get_mpz_t(), v_.get_mpz_t(), pk.get_mpz_t());
  return r;
}

PAdicInt PAdicInt::times_p_power(int k) const {
  if (k < 0) throw std::invalid_argument("times_p_power: bad exponent");
  PAdicInt r = *this;
  r.v_ = (v_ * pow_of(p_, k)) % modulus();
  return r;
}

bool PAdicInt::operator==(const PAdicInt& o) const {
  check_compatible(o);
  return v_ == o.v_;
}

std::string PAdicInt::str() const {
  std::ostringstream os;
  os << v_.get_str() << " (mod " << p_ << "^" << n_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

LocalMatrix::LocalMatrix(long p, int precision, int rows, int cols)
    : p_(p), n_(precision), rows_(rows), cols_(cols), mod_(pow_of(p, precision)),
      a_(static_cast<size_t>(rows) * cols, mpz_class(0)) {
  if (!is_odd_prime(p_)) throw std::invalid_argument("LocalMatrix: p must be an odd prime");
  if (n_ < 1) throw std::invalid_argument("LocalMatrix: precision must be >= 1");
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("LocalMatrix: empty shape");
}

LocalMatrix LocalMatrix::identity(long p, int precision, int n) {
  LocalMatrix m(p, precision, n, n);
  for (int i = 0; i < n; ++i) m.a_[m.index(i, i)] = 1;
  return m;
}

void LocalMatrix::set(int r, int c, const mpz_class& value) {
  mpz_class v = value % mod_;
  if (v < 0) v += mod_;
  a_[index(r, c)] = v;
}

int LocalMatrix::entry_valuation(int r, int c) const {
  const mpz_class& v = a_[index(r, c)];
  if (v == 0) return n_;
  mpz_class t = v;
  int k = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p_)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p_);
    ++k;
  }
  return k;
}

void LocalMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(a_[index(i, c)], a_[index(j, c)]);
}

void LocalMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(a_[index(r, i)], a_[index(r, j)]);
}

void LocalMatrix::scale_row(int i, const mpz_class& u) {
  for (int c = 0; c < cols_; ++c) {
    mpz_class& e = a_[index(i, c)];
    e = (e * u) % mod_;
  }
}

void LocalMatrix::scale_col(int j, const mpz_class& u) {
  for (int r = 0; r < rows_; ++r) {
    mpz_class& e = a_[index(r, j)];
    e = (e * u) % mod_;
  }
}

void LocalMatrix::addmul_row(int dst, int src, const mpz_class& coef) {
  for (int c = 0; c < cols_; ++c) {
    mpz_class& e = a_[index(dst, c)];
    e = (e + coef * a_[index(src, c)]) % mod_;
    if (e < 0) e += mod_;
  }
}

void LocalMatrix::addmul_col(int dst, int src, const mpz_class& coef) {
  for (int r = 0; r < rows_; ++r) {
    mpz_class& e = a_[index(r, dst)];
    e = (e + coef * a_[index(r, src)]) % mod_;
    if (e < 0) e += mod_;
  }
}

LocalMatrix LocalMatrix::transposed() const {
  LocalMatrix t(p_, n_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.a_[t.index(c, r)] = a_[index(r, c)];
  return t;
}

LocalMatrix LocalMatrix::augmented_with(const LocalMatrix& right) const {
  check_compatible(right);
  if (right.rows_ != rows_)
    throw std::invalid_argument("augmented_with: row count mismatch");
  LocalMatrix m(p_, n_, rows_, cols_ + right.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m.a_[m.index(r, c)] = a_[index(r, c)];
    for (int c = 0; c < right.cols_; ++c)
      m.a_[m.index(r, cols_ + c)] = right.a_[right.index(r, c)];
  }
  return m;
}

LocalMatrix LocalMatrix::multiplied_by(const LocalMatrix& rhs) const {
  check_compatible(rhs);
  if (cols_ != rhs.rows_) throw std::invalid_argument("multiplied_by: shape mismatch");
  LocalMatrix m(p_, n_, rows_, rhs.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < rhs.cols_; ++c) {
      mpz_class acc = 0;
      for (int k = 0; k < cols_; ++k) acc += a_[index(r, k)] * rhs.a_[rhs.index(k, c)];
      acc %= mod_;
      m.a_[m.index(r, c)] = acc;
    }
  return m;
}

void LocalMatrix::check_compatible(const LocalMatrix& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw arithmetic_error("LocalMatrix: mixed moduli");
}

std::string LocalMatrix::str() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    os << (r == 0 ? "[" : " ");
    for (int c = 0; c < cols_; ++c) {
      PAdicInt e = entry(r, c);
      os << e.balanced_residue().get_str() << (c + 1 < cols_ ? " " : "");
    }
    os << (r + 1 < rows_ ? "\n" : "]");
  }
  return os.str();
}

// ---------------------------------------------------------------------------

bool SNFResult::all_determined() const {
  return std::all_of(determined.begin(), determined.end(), [](bool b) { return b; });
}

int SNFResult::valuation_sum() const {
  int s = 0;
  for (int v : divisor_valuations) s += v;
  return s;
}

namespace {

// Elimination with valuation pivoting.  The pivot is the entry of minimal
// valuation in the active submatrix (ties: smallest (row, col) lexicographic);
// after scaling the pivot row by the inverse of the pivot's unit part the
// pivot is exactly p^v, and every other entry in its row/column has valuation
// >= v, so clearing them is exact.  Divisor valuations come out non-decreasing
// which also settles the divisibility chain.
SNFResult snf_impl(LocalMatrix& d, LocalMatrix* u, LocalMatrix* v) {
  const long p = d.prime();
  const int n = d.precision();
  const int k = std::min(d.rows(), d.cols());

  SNFResult res;
  res.precision = n;
  res.divisor_valuations.assign(k, n);
  res.determined.assign(k, false);

  for (int step = 0; step < k; ++step) {
    int best_r = -1, best_c = -1, best_val = n;
    for (int r = step; r < d.rows(); ++r)
      for (int c = step; c < d.cols(); ++c) {
        int val = d.entry_valuation(r, c);
        if (val < best_val) {
          best_val = val;
          best_r = r;
          best_c = c;
        }
      }
    if (best_r < 0) break;  // active submatrix vanishes mod p^N

    d.swap_rows(step, best_r);
    if (u) u->swap_rows(step, best_r);
    d.swap_cols(step, best_c);
    if (v) v->swap_cols(step, best_c);

    // normalize pivot to p^val
    PAdicInt pivot = d.entry(step, step);
    mpz_class unit_inv = pivot.unit_part().inverse().residue();
    d.scale_row(step, unit_inv);
    if (u) u->scale_row(step, unit_inv);

    mpz_class pv = pow_of(p, best_val);
    for (int r = step + 1; r < d.rows(); ++r) {
      const mpz_class& e = d.at(r, step);
      if (e == 0) continue;
      mpz_class coef;
      mpz_divexact(coef.get_mpz_t(), e.get_mpz_t(), pv.get_mpz_t());
      coef = -coef;
      d.addmul_row(r, step, coef);
      if (u) u->addmul_row(r, step, coef);
    }
    for (int c = step + 1; c < d.cols(); ++c) {
      const mpz_class& e = d.at(step, c);
      if (e == 0) continue;
      mpz_class coef;
      mpz_divexact(coef.get_mpz_t(), e.get_mpz_t(), pv.get_mpz_t());
      coef = -coef;
      d.addmul_col(c, step, coef);
      if (v) v->addmul_col(c, step, coef);
    }

    res.divisor_valuations[step] = best_val;
    res.determined[step] = true;
  }
  return res;
}

}  // namespace

SNFResult smith_normal_form(const LocalMatrix& m) {
  LocalMatrix d = m;
  return snf_impl(d, nullptr, nullptr);
}

SNFTransform smith_normal_form_with_transform(const LocalMatrix& m) {
  LocalMatrix d = m;
  LocalMatrix u = LocalMatrix::identity(m.prime(), m.precision(), m.rows());
  LocalMatrix v = LocalMatrix::identity(m.prime(), m.precision(), m.cols());
  SNFResult res = snf_impl(d, &u, &v);
  return SNFTransform{std::move(res), std::move(u), std::move(v), std::move(d)};
}

LocalMatrix kernel_mod_ideal(const LocalMatrix& m) {
  // With D = U M V invertible transforms, x M == 0 iff y D == 0 where
  // x = y U.  Row i of D constrains y_i by p^(N - v_i); rows past the
  // diagonal are free.
  const long p = m.prime();
  const int n = m.precision();
  SNFTransform t = smith_normal_form_with_transform(m);
  const int k = static_cast<int>(t.divisors.divisor_valuations.size());

  std::vector<std::vector<mpz_class>> gens;
  for (int i = 0; i < m.rows(); ++i) {
    int cofactor = (i < k) ? n - t.divisors.divisor_valuations[i] : 0;
    mpz_class scale = pow_of(p, cofactor);
    std::vector<mpz_class> row(m.rows());
    bool nonzero = false;
    for (int c = 0; c < m.rows(); ++c) {
      mpz_class e = (scale * t.row_transform.at(i, c)) % t.row_transform.modulus();
      row[c] = e;
      if (e != 0) nonzero = true;
    }
    if (nonzero) gens.push_back(std::move(row));
  }

  LocalMatrix out(p, n, std::max<int>(1, static_cast<int>(gens.size())), m.rows());
  for (size_t r = 0; r < gens.size(); ++r)
    for (int c = 0; c < m.rows(); ++c) out.set(static_cast<int>(r), c, gens[r][c]);
  return out;
}

int column_span_log_order(const LocalMatrix& m) {
  SNFResult s = smith_normal_form(m);
  int total = 0;
  for (int i = 0; i < m.rows(); ++i) {
    int v = (i < static_cast<int>(s.divisor_valuations.size()))
                ? s.divisor_valuations[i]
                : m.precision();
    total += m.precision() - v;
  }
  return total;
}

}  // namespace iwasawa
