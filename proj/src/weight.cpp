#include "treesearch/weight.hpp"

#include <cctype>
#include <stdexcept>

namespace treesearch {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Weight parse_weight(const std::string& text) {
  if (!all_digits(text)) throw std::invalid_argument("not a nonnegative integer: '" + text + "'");
  return Weight(text);
}

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) throw std::invalid_argument("malformed rational: '" + text + "'");
    Weight den(q);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    value = Rational(Weight(p), den);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)) || (fp.empty() && s.size() == 1))
      throw std::invalid_argument("malformed decimal: '" + text + "'");
    Weight scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    value = Rational(Weight(ip + fp), scale);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number: '" + text + "'");
    value = Rational(Weight(s));
  }
  return negative ? -value : value;
}

unsigned bit_length(const Weight& w) {
  if (w <= 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(w)) + 1;
}

}  // namespace treesearch
