#pragma once

#include <map>
#include <string>

#include "ellt/curve/divisor.hpp"

namespace ellt::tmodel {

using curve::TorsionDivisor;

// w: {orders} -> Z, equal to the tail w(T) away from finitely many orders.
class AlmostConstant {
 public:
  AlmostConstant() = default;
  // values: s -> w(s); entries equal to the tail are dropped.
  explicit AlmostConstant(long tail, const std::map<long, long>& values = {});
  static AlmostConstant constant(long tail) { return AlmostConstant(tail); }
  static AlmostConstant indicator(long s, long value = 1);

  long tail() const { return tail_; }
  long operator()(long s) const;
  // The deviating values s -> w(s).
  const std::map<long, long>& deviations() const { return dev_; }

  AlmostConstant operator-() const;
  friend AlmostConstant operator+(const AlmostConstant& a, const AlmostConstant& b);
  friend AlmostConstant operator-(const AlmostConstant& a, const AlmostConstant& b) { return a + (-b); }
  friend bool operator==(const AlmostConstant& a, const AlmostConstant& b) = default;
  // Pointwise, including the tail.
  bool geq(const AlmostConstant& o) const;

  // s -> w(s) - w(T); the divisor of the line bundle attached to w.
  TorsionDivisor window_divisor() const;

 private:
  long tail_ = 0;
  std::map<long, long> dev_;
};

std::string to_string(const AlmostConstant& w);

// c^w with w >= 0 and tail 0; c_s is the indicator exponent at s.
class EulerClassSymbol {
 public:
  explicit EulerClassSymbol(AlmostConstant exponent);
  static EulerClassSymbol cyclotomic(long s) { return EulerClassSymbol(AlmostConstant::indicator(s)); }
  const AlmostConstant& exponent() const { return exponent_; }
  friend EulerClassSymbol operator*(const EulerClassSymbol& a, const EulerClassSymbol& b) {
    return EulerClassSymbol(a.exponent_ + b.exponent_);
  }
  friend bool operator==(const EulerClassSymbol& a, const EulerClassSymbol& b) = default;

 private:
  AlmostConstant exponent_;
};

// W = sum a_n z^n + fixed_part * epsilon.
struct Representation {
  std::map<long, long> multiplicities;  // n >= 1, nonzero a_n
  long fixed_part = 0;

  static Representation z(long n, long a = 1);
  Representation operator-() const;
  friend Representation operator+(const Representation& a, const Representation& b);
  friend bool operator==(const Representation& a, const Representation& b) = default;
  bool is_zero() const { return multiplicities.empty() && fixed_part == 0; }
};

// "z+2z^3-z^2+1e" style; "0" for zero.
std::string to_string(const Representation& w);

// w(s) = sum_{s | n} a_n + fixed_part.
AlmostConstant dim_fn(const Representation& w);

}  // namespace ellt::tmodel
