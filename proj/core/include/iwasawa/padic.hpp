#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace iwasawa {

// Thrown when an arithmetic contract is violated (mixed moduli, inverting a
// non-unit, inexact division, ...).  Plain out-of-range arguments raise
// std::invalid_argument instead.
class arithmetic_error : public std::runtime_error {
public:
  explicit arithmetic_error(const std::string& what) : std::runtime_error(what) {}
};

bool is_odd_prime(long p);

// p^e as an exact integer; e >= 0.
mpz_class pow_of(long p, int e);

// Element of Z/p^N for an odd prime p, with the exponent N carried along as
// the working precision.  Residues are normalized into [0, p^N).  The
// valuation of 0 is reported as N ("divisible by at least p^N"); callers that
// need the distinction must re-run at higher precision.  Arithmetic is closed
// at fixed (p, N): combining elements from different moduli is an error.
class PAdicInt {
public:
  PAdicInt(long p, int precision, mpz_class value);

  long prime() const { return p_; }
  int precision() const { return n_; }
  mpz_class modulus() const { return pow_of(p_, n_); }

  // Residue in [0, p^N).
  const mpz_class& residue() const { return v_; }
  // Representative of minimal absolute value, in [-(p^N - 1)/2, (p^N - 1)/2].
  mpz_class balanced_residue() const;

  bool is_zero() const { return v_ == 0; }
  bool is_unit() const;

  // Largest v <= N with p^v | value; N for zero.
  int valuation() const;

  PAdicInt operator-() const;
  PAdicInt& operator+=(const PAdicInt& o);
  PAdicInt& operator-=(const PAdicInt& o);
  PAdicInt& operator*=(const PAdicInt& o);
  friend PAdicInt operator+(PAdicInt a, const PAdicInt& b) { return a += b; }
  friend PAdicInt operator-(PAdicInt a, const PAdicInt& b) { return a -= b; }
  friend PAdicInt operator*(PAdicInt a, const PAdicInt& b) { return a *= b; }

  // Multiplicative inverse; error unless unit.
  PAdicInt inverse() const;
  // Unit u with *this == u * p^valuation(); error on zero.
  PAdicInt unit_part() const;
  // Exact division by p^k; error unless valuation >= k.
  PAdicInt divide_exact_p_power(int k) const;
  PAdicInt times_p_power(int k) const;

  bool operator==(const PAdicInt& o) const;
  bool operator!=(const PAdicInt& o) const { return !(*this == o); }

  std::string str() const;

private:
  void check_compatible(const PAdicInt& o) const;

  long p_;
  int n_;
  mpz_class v_;
};

// Dense matrix over Z/p^N.  Entries are raw residues in [0, p^N) sharing one
// (p, N) context; the modulus is cached once per matrix.
class LocalMatrix {
public:
  LocalMatrix(long p, int precision, int rows, int cols);
  static LocalMatrix identity(long p, int precision, int n);

  long prime() const { return p_; }
  int precision() const { return n_; }
  const mpz_class& modulus() const { return mod_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const mpz_class& at(int r, int c) const { return a_[index(r, c)]; }
  void set(int r, int c, const mpz_class& value);
  PAdicInt entry(int r, int c) const { return PAdicInt(p_, n_, at(r, c)); }
  int entry_valuation(int r, int c) const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  // row i *= u (u must be a unit residue)
  void scale_row(int i, const mpz_class& u);
  void scale_col(int j, const mpz_class& u);
  // row dst += coef * row src
  void addmul_row(int dst, int src, const mpz_class& coef);
  void addmul_col(int dst, int src, const mpz_class& coef);

  LocalMatrix transposed() const;
  // [ *this | right ] side by side.
  LocalMatrix augmented_with(const LocalMatrix& right) const;
  LocalMatrix multiplied_by(const LocalMatrix& rhs) const;

  bool operator==(const LocalMatrix& o) const = default;

  std::string str() const;

private:
  int index(int r, int c) const { return r * cols_ + c; }
  void check_compatible(const LocalMatrix& o) const;

  long p_;
  int n_;
  int rows_, cols_;
  mpz_class mod_;
  std::vector<mpz_class> a_;
};

// Diagonal divisor data of a matrix over Z/p^N.  Valuations are
// non-decreasing.  An entry equal to N means the divisor vanishes at this
// precision; it is flagged in `determined`, not treated as an error.
struct SNFResult {
  int precision = 0;
  std::vector<int> divisor_valuations;  // length min(rows, cols)
  std::vector<bool> determined;         // divisor resolved below p^N

  bool all_determined() const;
  // Sum of divisor valuations (undetermined ones count as N).
  int valuation_sum() const;
};

// Divisors only (no transforms tracked).
SNFResult smith_normal_form(const LocalMatrix& m);

// D = U * M * V with U, V invertible over Z/p^N.
struct SNFTransform {
  SNFResult divisors;
  LocalMatrix row_transform;  // U, rows x rows
  LocalMatrix col_transform;  // V, cols x cols
  LocalMatrix diagonal;       // D
};
SNFTransform smith_normal_form_with_transform(const LocalMatrix& m);

// Generating set of the left kernel {x : x M == 0 over Z/p^N}, one generator
// per returned row.  Zero generators are dropped.
LocalMatrix kernel_mod_ideal(const LocalMatrix& m);

// log_p of the order of the subgroup of (Z/p^N)^rows spanned by the columns.
int column_span_log_order(const LocalMatrix& m);

}  // namespace iwasawa
