#pragma once

#include <vector>

#include "ellt/exact/rational.hpp"

namespace ellt::exact {

// Truncated Laurent series c_v t^v + ... + c_{v+p-1} t^{v+p-1} + O(t^{v+p}).
// A nonzero series has c_v != 0 and relative precision p >= 1. A series that is
// zero to the known precision stores no coefficients and keeps only the
// absolute precision v + p = v.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  // Leading zeros are absorbed into the valuation, consuming precision.
  LaurentSeries(long valuation, std::vector<Rational> coeffs);
  static LaurentSeries zero(long absolute_precision);
  static LaurentSeries monomial(const Rational& c, long exponent, std::size_t precision);
  // 1 + O(t^precision).
  static LaurentSeries one(std::size_t precision) { return monomial(Rational(1), 0, precision); }

  bool is_zero() const { return c_.empty(); }
  long valuation() const { return v_; }
  std::size_t precision() const { return c_.size(); }
  long absolute_precision() const { return v_ + static_cast<long>(c_.size()); }
  const std::vector<Rational>& coeffs() const { return c_; }
  // Coefficient of t^e; throws PrecisionExhausted when e is beyond precision.
  Rational coefficient(long e) const;
  const Rational& lead() const;

  // Drop terms of exponent >= absolute bound.
  LaurentSeries truncated_absolute(long bound) const;
  LaurentSeries truncated(std::size_t relative_precision) const;
  LaurentSeries shifted(long k) const;
  LaurentSeries derivative() const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const Rational& s);
  friend LaurentSeries operator*(const Rational& s, const LaurentSeries& a) { return a * s; }
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) = default;

 private:
  void normalize();
  long v_ = 0;
  std::vector<Rational> c_;
};

// Reciprocal to relative precision min(prec, s.precision()); throws ZeroSeries.
LaurentSeries series_reciprocal(const LaurentSeries& s, std::size_t prec);
LaurentSeries pow(const LaurentSeries& s, long exponent);

}  // namespace ellt::exact
