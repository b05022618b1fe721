#include "ellt/exact/rational.hpp"

#include <cctype>

#include "ellt/errors.hpp"

namespace ellt::exact {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string body(text.substr(b, e - b));
  if (body.empty()) throw ValidationError("empty rational");
  std::size_t slash = body.find('/');
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string num = body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ValidationError("malformed rational '" + body + "'");
  Integer n(num, 10);
  Integer d(den, 10);
  if (d == 0) throw ValidationError("zero denominator in '" + body + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (is_zero(base)) throw DivisionByZero("zero to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  Rational result(1);
  Rational b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

}  // namespace ellt::exact
