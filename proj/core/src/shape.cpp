#include "iwasawa/shape.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "iwasawa/padic.hpp"

namespace iwasawa {

AbelianPGroupShape::AbelianPGroupShape(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int e : e_)
    if (e < 0) throw std::invalid_argument("AbelianPGroupShape: negative exponent");
  std::sort(e_.begin(), e_.end(), std::greater<int>());
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

AbelianPGroupShape AbelianPGroupShape::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("shape parse: empty string");
  if (text == "0") return AbelianPGroupShape();
  std::vector<int> exps;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t dot = text.find('.', pos);
    std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("shape parse: bad token '" + tok + "' in '" + text + "'");
    int e = std::stoi(tok);
    if (e == 0) throw std::invalid_argument("shape parse: zero exponent in '" + text + "'");
    exps.push_back(e);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  for (size_t i = 1; i < exps.size(); ++i)
    if (exps[i] > exps[i - 1])
      throw std::invalid_argument("shape parse: exponents must be non-increasing in '" + text + "'");
  return AbelianPGroupShape(std::move(exps));
}

int AbelianPGroupShape::order_exponent() const {
  return std::accumulate(e_.begin(), e_.end(), 0);
}

std::string AbelianPGroupShape::str() const {
  if (e_.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < e_.size(); ++i) {
    if (i) os << '.';
    os << e_[i];
  }
  return os.str();
}

std::string AbelianPGroupShape::group_notation(long p) const {
  if (e_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < e_.size(); ++i) {
    if (i) os << 'x';
    os << pow_of(p, e_[i]).get_str();
  }
  return os.str();
}

}  // namespace iwasawa
