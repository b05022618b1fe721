#include "ellt/exact/poly.hpp"

#include <cctype>
#include <sstream>

#include "ellt/errors.hpp"

namespace ellt::exact {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && exact::is_zero(c_.back())) c_.pop_back();
}

Rational Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

const Rational& Poly::lead() const {
  if (c_.empty()) throw DivisionByZero("leading coefficient of the zero polynomial");
  return c_.back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  Rational inv = 1 / lead();
  r *= inv;
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Rational Poly::eval(const Rational& at) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
  return acc;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Rational> v(k);
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(std::move(v));
}

Poly Poly::truncated(std::size_t k) const {
  if (k >= c_.size()) return *this;
  return Poly(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<long>(k)));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (exact::is_zero(s)) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  Rational t;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (exact::is_zero(a.c_[i])) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      t = a.c_[i] * b.c_[j];
      r[i + j] += t;
    }
  }
  return Poly(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  Rational inv_lead = 1 / bc.back();
  std::vector<Rational> quo(rem.size() - db);
  Rational t;
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational q = rem[k + db] * inv_lead;
    if (exact::is_zero(q)) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      t = q * bc[j];
      rem[k + j] -= t;
    }
    quo[k] = std::move(q);
  }
  rem.resize(db);
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw ValidationError("inexact polynomial division");
  return q;
}

bool divides(const Poly& b, const Poly& a) {
  if (b.is_zero()) return a.is_zero();
  return (a % b).is_zero();
}

Poly poly_gcd(const Poly& p, const Poly& q) {
  Poly a = p.monic();
  Poly b = q.monic();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.is_constant()) return Poly::constant(Rational(1));
    Poly r = (a % b).monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly pow(const Poly& p, unsigned exponent) {
  Poly result = Poly::constant(Rational(1));
  Poly base = p;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

Poly pow_mod(const Poly& p, unsigned long exponent, const Poly& m) {
  Poly acc = Poly::constant(Rational(1)) % m;
  Poly base = p % m;
  while (exponent > 0) {
    if (exponent & 1) acc = (acc * base) % m;
    exponent >>= 1;
    if (exponent > 0) base = (base * base) % m;
  }
  return acc;
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  if (m.degree() < 1) throw DivisionByZero("inverse modulo a constant");
  // Extended Euclid tracking only the coefficient of a.
  Poly r0 = m;
  Poly r1 = a % m;
  Poly s0;
  Poly s1 = Poly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw DivisionByZero("polynomial not invertible modulo m");
  Poly inv = s0 * (1 / r0.lead());
  return inv % m;
}

unsigned multiplicity(const Poly& p, const Poly& q) {
  if (q.degree() < 1 || p.is_zero()) throw ValidationError("multiplicity needs nonconstant q and nonzero p");
  unsigned k = 0;
  Poly r = p;
  for (;;) {
    auto [quo, rem] = divmod(r, q);
    if (!rem.is_zero()) return k;
    r = std::move(quo);
    ++k;
  }
}

bool is_squarefree(const Poly& p) {
  if (p.degree() < 1) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "[0]";
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) os << ", ";
    os << to_string(p.coeffs()[i]);
  }
  os << ']';
  return os.str();
}

Poly parse_poly(std::string_view text) {
  std::size_t b = text.find('[');
  std::size_t e = text.rfind(']');
  if (b == std::string_view::npos || e == std::string_view::npos || e < b)
    throw ValidationError("polynomial text must be a bracketed list: '" + std::string(text) + "'");
  for (std::size_t i = 0; i < b; ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) throw ValidationError("junk before '['");
  for (std::size_t i = e + 1; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) throw ValidationError("junk after ']'");
  std::string_view body = text.substr(b + 1, e - b - 1);
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  bool any = false;
  for (char c : body)
    if (!std::isspace(static_cast<unsigned char>(c))) any = true;
  if (!any) return {};
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string_view item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coeffs.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Poly(std::move(coeffs));
}

}  // namespace ellt::exact
