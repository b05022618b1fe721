#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellt/exact/rational.hpp"

namespace ellt::exact {

// Dense univariate polynomial over Q, coefficients in ascending order.
// The highest stored coefficient is nonzero; the zero polynomial stores none.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);
  static Poly x() { return monomial(Rational(1), 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  // Zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& lead() const;

  Poly monic() const;
  Poly derivative() const;
  Rational eval(const Rational& at) const;
  // Multiply by x^k.
  Poly shifted(std::size_t k) const;
  // Terms of degree < k.
  Poly truncated(std::size_t k) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

// (quotient, remainder); throws DivisionByZero for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// Throws ValidationError unless b divides a.
Poly exact_quotient(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& p, const Poly& q);
Poly pow(const Poly& p, unsigned exponent);
// p^e mod m for nonconstant m.
Poly pow_mod(const Poly& p, unsigned long exponent, const Poly& m);
// a^{-1} mod m; throws DivisionByZero when gcd(a, m) != 1.
Poly inverse_mod(const Poly& a, const Poly& m);
// Largest k with q^k | p, for nonconstant q and nonzero p.
unsigned multiplicity(const Poly& p, const Poly& q);
bool is_squarefree(const Poly& p);

// "[c0, c1, ...]" with each coefficient rendered by to_string(Rational).
std::string to_string(const Poly& p);
Poly parse_poly(std::string_view text);

}  // namespace ellt::exact
