#pragma once

#include <compare>
#include <string>
#include <vector>

namespace iwasawa {

// Isomorphism type of a finite abelian p-group, stored as the non-increasing
// list of cyclic exponents: Z/p^e1 x Z/p^e2 x ... with e1 >= e2 >= ... >= 1.
// The trivial group is the empty list.  Text form is dot-separated exponents
// ("3.2.1.1.1"), with "0" for the trivial group.
class AbelianPGroupShape {
public:
  AbelianPGroupShape() = default;
  // Canonicalizes: sorts non-increasing and drops zero exponents.
  explicit AbelianPGroupShape(std::vector<int> exponents);

  static AbelianPGroupShape parse(const std::string& text);

  const std::vector<int>& exponents() const { return e_; }
  bool is_trivial() const { return e_.empty(); }
  bool is_cyclic() const { return e_.size() == 1; }
  int rank() const { return static_cast<int>(e_.size()); }
  // log_p of the group order.
  int order_exponent() const;
  int max_exponent() const { return e_.empty() ? 0 : e_.front(); }

  std::string str() const;
  // Multiplicative notation with explicit orders, e.g. "27x9x3" for p = 3.
  std::string group_notation(long p) const;

  auto operator<=>(const AbelianPGroupShape&) const = default;

private:
  std::vector<int> e_;
};

}  // namespace iwasawa
