#include "iwasawa/verify.hpp"

#include <algorithm>
#include <sstream>

#include "iwasawa/classification.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/reiner.hpp"

namespace iwasawa {

namespace {

std::string cell(long p, int m, int r, int j) {
  std::ostringstream os;
  os << "(p=" << p << ", m=" << m << ", r=" << r << ", j=" << j << ")";
  return os.str();
}

AbelianPGroupShape capped(const AbelianPGroupShape& shape, int n) {
  std::vector<int> e = shape.exponents();
  for (int& v : e) v = std::min(v, n);
  return AbelianPGroupShape(std::move(e));
}

AbelianPGroupShape shape_of_divisors(const SNFResult& snf) {
  std::vector<int> e;
  for (size_t i = 0; i < snf.divisor_valuations.size(); ++i)
    if (snf.determined[i] && snf.divisor_valuations[i] > 0)
      e.push_back(snf.divisor_valuations[i]);
  return AbelianPGroupShape(std::move(e));
}

}  // namespace

VerifyResult verify_battery(long p, int max_m, int max_r) {
  VerifyResult result;
  result.p = p;
  result.max_m = max_m;
  result.max_r = max_r;
  auto fail = [&result](const std::string& what) { result.failures.push_back(what); };

  // closed form vs elimination vs (p = 3) enumeration; divisor sum law
  for (int m = 1; m <= max_m; ++m) {
    for (int r = 1; r <= max_r; ++r) {
      for (int j = 1; j < static_cast<int>(p); ++j) {
        ReinerIdeal ideal{p, m, r, j};
        QuotientModel model = quotient_model(ideal);
        AbelianPGroupShape closed = table1_shape(p, m, r, j);

        ++result.cases;
        if (closed != model.shape)
          fail("closed-form shape " + closed.str() + " != elimination shape " +
               model.shape.str() + " at " + cell(p, m, r, j));

        ++result.cases;
        if (!model.divisors.all_determined())
          fail("unresolved divisor at " + cell(p, m, r, j));
        else if (model.divisors.valuation_sum() != r + m)
          fail("divisor valuation sum != r + m at " + cell(p, m, r, j));

        if (p == 3) {
          int n = std::min(brute_force_precision(ideal), 5);
          if (brute_force_in_budget(ideal, n)) {
            ++result.cases;
            AbelianPGroupShape counted = quotient_brute_force(ideal, n);
            if (counted != capped(closed, n))
              fail("counting oracle " + counted.str() + " != capped closed form " +
                   capped(closed, n).str() + " at " + cell(p, m, r, j) +
                   " precision " + std::to_string(n));
          }
        }
      }
    }
  }

  // fixed subgroup: order p^m exactly for j != 0, strictly larger for j = 0
  for (int m = 1; m <= std::min(max_m, 2); ++m) {
    for (int r = 1; r <= std::min(max_r, 6); ++r) {
      for (int j = 0; j < static_cast<int>(p); ++j) {
        ReinerIdeal ideal{p, m, r, j};
        int log_order = fixed_subgroup_order(ideal, default_precision(ideal));
        ++result.cases;
        if (j != 0 && log_order != m)
          fail("fixed subgroup has log-order " + std::to_string(log_order) +
               " != m at " + cell(p, m, r, j));
        if (j == 0 && log_order <= m)
          fail("fixed subgroup not enlarged at the degenerate " + cell(p, m, r, j));
      }
    }
  }

  // cyclotomic quotient: closed form vs the power-matrix presentation
  for (int r = 1; r <= 3 * static_cast<int>(p - 1); ++r) {
    int precision = r / static_cast<int>(p - 1) + 3;
    SNFResult snf = smith_normal_form(cyclotomic_power_matrix(p, r, precision));
    ++result.cases;
    if (shape_of_divisors(snf) != cyclotomic_quotient_shape(p, r))
      fail("cyclotomic presentation shape " + shape_of_divisors(snf).str() +
           " != closed form " + cyclotomic_quotient_shape(p, r).str() + " at (p=" +
           std::to_string(p) + ", r=" + std::to_string(r) + ")");
  }

  return result;
}

}  // namespace iwasawa
