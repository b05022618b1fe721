#include "ellt/exact/series.hpp"

#include <algorithm>

#include "ellt/errors.hpp"

namespace ellt::exact {

LaurentSeries::LaurentSeries(long valuation, std::vector<Rational> coeffs)
    : v_(valuation), c_(std::move(coeffs)) {
  normalize();
}

void LaurentSeries::normalize() {
  std::size_t k = 0;
  while (k < c_.size() && exact::is_zero(c_[k])) ++k;
  if (k == 0) return;
  v_ += static_cast<long>(k);
  c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
}

LaurentSeries LaurentSeries::zero(long absolute_precision) {
  LaurentSeries s;
  s.v_ = absolute_precision;
  return s;
}

LaurentSeries LaurentSeries::monomial(const Rational& c, long exponent, std::size_t precision) {
  if (exact::is_zero(c)) return zero(exponent + static_cast<long>(precision));
  std::vector<Rational> v(precision);
  if (precision == 0) return zero(exponent);
  v[0] = c;
  return LaurentSeries(exponent, std::move(v));
}

Rational LaurentSeries::coefficient(long e) const {
  if (e >= absolute_precision())
    throw PrecisionExhausted("coefficient of t^" + std::to_string(e) + " beyond precision O(t^" +
                             std::to_string(absolute_precision()) + ")");
  if (e < v_) return Rational(0);
  return c_[static_cast<std::size_t>(e - v_)];
}

const Rational& LaurentSeries::lead() const {
  if (c_.empty()) throw ZeroSeries();
  return c_.front();
}

LaurentSeries LaurentSeries::truncated_absolute(long bound) const {
  if (bound >= absolute_precision()) return *this;
  if (bound <= v_) return zero(bound);
  return LaurentSeries(v_, std::vector<Rational>(c_.begin(), c_.begin() + (bound - v_)));
}

LaurentSeries LaurentSeries::truncated(std::size_t relative_precision) const {
  if (c_.empty() || relative_precision >= c_.size()) return *this;
  return truncated_absolute(v_ + static_cast<long>(relative_precision));
}

LaurentSeries LaurentSeries::shifted(long k) const {
  LaurentSeries s = *this;
  s.v_ += k;
  return s;
}

LaurentSeries LaurentSeries::derivative() const {
  if (c_.empty()) return zero(v_ - 1);
  std::vector<Rational> d(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] * (v_ + static_cast<long>(i));
  return LaurentSeries(v_ - 1, std::move(d));
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  long abs = std::min(a.absolute_precision(), b.absolute_precision());
  long lo = std::min(a.is_zero() ? abs : a.v_, b.is_zero() ? abs : b.v_);
  if (lo >= abs) return LaurentSeries::zero(abs);
  std::vector<Rational> c(static_cast<std::size_t>(abs - lo));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    long e = a.v_ + static_cast<long>(i);
    if (e >= abs) break;
    c[static_cast<std::size_t>(e - lo)] += a.c_[i];
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    long e = b.v_ + static_cast<long>(i);
    if (e >= abs) break;
    c[static_cast<std::size_t>(e - lo)] += b.c_[i];
  }
  LaurentSeries s(lo, std::move(c));
  if (s.c_.empty()) s.v_ = abs;
  return s;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  // For a zero factor v_ is its absolute precision, so the bound is uniform.
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(a.v_ + b.v_);
  std::size_t p = std::min(a.c_.size(), b.c_.size());
  std::vector<Rational> c(p);
  Rational t;
  for (std::size_t i = 0; i < p; ++i) {
    if (exact::is_zero(a.c_[i])) continue;
    for (std::size_t j = 0; i + j < p; ++j) {
      t = a.c_[i] * b.c_[j];
      c[i + j] += t;
    }
  }
  return LaurentSeries(a.v_ + b.v_, std::move(c));
}

LaurentSeries operator*(const LaurentSeries& a, const Rational& s) {
  if (exact::is_zero(s)) return LaurentSeries::zero(a.absolute_precision());
  LaurentSeries r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

LaurentSeries series_reciprocal(const LaurentSeries& s, std::size_t prec) {
  if (s.is_zero()) throw ZeroSeries();
  std::size_t p = std::min(prec, s.precision());
  const auto& a = s.coeffs();
  std::vector<Rational> r(p);
  Rational inv = 1 / a[0];
  r[0] = inv;
  Rational acc, t;
  for (std::size_t n = 1; n < p; ++n) {
    acc = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (exact::is_zero(a[k])) continue;
      t = a[k] * r[n - k];
      acc += t;
    }
    r[n] = -acc * inv;
  }
  return LaurentSeries(-s.valuation(), std::move(r));
}

LaurentSeries pow(const LaurentSeries& s, long exponent) {
  if (exponent < 0) return pow(series_reciprocal(s, s.precision()), -exponent);
  LaurentSeries result = LaurentSeries::one(std::max<std::size_t>(s.precision(), 1));
  if (s.is_zero() && exponent > 0) return LaurentSeries::zero(s.valuation() * exponent);
  LaurentSeries base = s;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

}  // namespace ellt::exact
