#include "iwasawa/classification.hpp"

#include <stdexcept>

#include "iwasawa/padic.hpp"

namespace iwasawa {

namespace {

void check_params(long p, int m, int r) {
  if (!is_odd_prime(p)) throw std::invalid_argument("classification: p must be an odd prime");
  if (m < 1) throw std::invalid_argument("classification: m must be >= 1");
  if (r < 1) throw std::invalid_argument("classification: r must be >= 1");
}

std::vector<int> repeat(int value, int count) {
  return std::vector<int>(static_cast<size_t>(count), value);
}

}  // namespace

bool split_point_j_congruent(long p, int m, int j) {
  long want = (m % 2 == 0) ? 1 : p - 1;  // (-1)^m mod p
  return (j % p + p) % p == want;
}

AbelianPGroupShape table1_shape(long p, int m, int r, int j) {
  check_params(p, m, r);
  if (j < 1 || j >= p) throw std::invalid_argument("table1_shape: j must be in [1, p-1]");
  const int s = r / static_cast<int>(p - 1);
  const int t = r % static_cast<int>(p - 1);

  std::vector<int> e;
  if (m < s) {
    e = repeat(s + 1, t + 1);
    e.push_back(m - 1);
    auto tail = repeat(s, static_cast<int>(p) - t - 2);
    e.insert(e.end(), tail.begin(), tail.end());
  } else if (m > s) {
    if (t != 0) {
      e = repeat(s + 1, t - 1);
      e.push_back(m + 1);
      auto tail = repeat(s, static_cast<int>(p) - t);
      e.insert(e.end(), tail.begin(), tail.end());
    } else {
      e = repeat(s, static_cast<int>(p) - 2);
      e.push_back(m + 1);
      e.push_back(s - 1);
    }
  } else {  // m == s
    if (t != 0) {
      e = repeat(m + 1, t + 1);
      e.push_back(m - 1);
      auto tail = repeat(m, static_cast<int>(p) - t - 2);
      e.insert(e.end(), tail.begin(), tail.end());
    } else if (split_point_j_congruent(p, m, j)) {
      e = repeat(m, static_cast<int>(p));
    } else {
      e = repeat(m, static_cast<int>(p) - 2);
      e.push_back(m + 1);
      e.push_back(m - 1);
    }
  }
  return AbelianPGroupShape(std::move(e));
}

std::vector<EnumeratedShape> theorem1_enumerate(long p, int m, int max_exponent) {
  check_params(p, m, 1);
  std::vector<EnumeratedShape> out;
  for (int r = 1; r + m <= max_exponent; ++r) {
    if (r == static_cast<int>(p - 1) * m) {
      int j_other = (m % 2 == 0) ? 2 : 1;  // any j with j !== (-1)^m
      out.push_back({table1_shape(p, m, r, j_other), r, static_cast<int>(p) - 2});
      int j_cong = (m % 2 == 0) ? 1 : static_cast<int>(p) - 1;
      out.push_back({table1_shape(p, m, r, j_cong), r, 1});
    } else {
      out.push_back({table1_shape(p, m, r, 1), r, static_cast<int>(p) - 1});
    }
  }
  return out;
}

bool is_lambda_one_pair(int m, const AbelianPGroupShape& first_layer) {
  if (m < 1) throw std::invalid_argument("is_lambda_one_pair: m must be >= 1");
  return first_layer == AbelianPGroupShape({m + 1});
}

}  // namespace iwasawa
