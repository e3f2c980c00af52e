#include "eqp/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace eqp {

namespace {

Integer integer_from_digits(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad digit in number: '" + s + "'");
  return Integer(s);
}

}  // namespace

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
      neg = num[0] == '-';
      num = num.substr(1);
    }
    Integer p = integer_from_digits(num), q = integer_from_digits(den);
    if (q == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    Rational r(p, q);
    return neg ? Rational(-r) : r;
  }
  std::string t = s;
  bool neg = false;
  if (t[0] == '-' || t[0] == '+') {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  std::string int_part = t, frac_part;
  if (auto dot = t.find('.'); dot != std::string::npos) {
    int_part = t.substr(0, dot);
    frac_part = t.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("bad number: '" + s + "'");
    if (int_part.empty()) int_part = "0";
  }
  Integer num = integer_from_digits(int_part);
  Integer den = 1;
  for (char c : frac_part) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad digit in number: '" + s + "'");
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

}  // namespace eqp
