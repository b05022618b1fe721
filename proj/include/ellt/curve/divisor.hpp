#pragma once

#include <map>
#include <string>
#include <utility>

namespace ellt::curve {

// |A<s>|, the number of points of exact order s: Moebius inversion of n^2,
// i.e. s^2 prod_{p | s} (1 - p^-2). Throws ValidationError for s = 0.
long exact_order_count(long s);

// Sum_s n_s A<s>; the class s = 1 is the identity point e.
class TorsionDivisor {
 public:
  TorsionDivisor() = default;
  explicit TorsionDivisor(std::map<long, long> coeffs);
  static TorsionDivisor point(long s, long n = 1);
  static TorsionDivisor identity(long n = 1) { return point(1, n); }
  // A[n] = sum over s | n of A<s>.
  static TorsionDivisor full_torsion(long n, long mult = 1);

  const std::map<long, long>& coeffs() const { return c_; }
  long operator[](long s) const;
  void set(long s, long n);
  long degree() const;
  bool is_zero() const { return c_.empty(); }
  // Largest class with a nonzero coefficient, 0 for the zero divisor.
  long max_class() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  TorsionDivisor operator-() const;
  TorsionDivisor& operator+=(const TorsionDivisor& o);
  TorsionDivisor& operator-=(const TorsionDivisor& o);
  friend TorsionDivisor operator+(TorsionDivisor a, const TorsionDivisor& b) { return a += b; }
  friend TorsionDivisor operator-(TorsionDivisor a, const TorsionDivisor& b) { return a -= b; }
  friend TorsionDivisor operator*(long k, const TorsionDivisor& d);
  friend bool operator==(const TorsionDivisor& a, const TorsionDivisor& b) = default;
  // Coefficientwise comparison.
  bool geq(const TorsionDivisor& o) const;

 private:
  std::map<long, long> c_;
};

TorsionDivisor pointwise_max(const TorsionDivisor& a, const TorsionDivisor& b);

// "1:2,3:-1"; "0" for the zero divisor.
std::string to_string(const TorsionDivisor& d);

// (h0, h1) of O(D). Degree-0 torsion divisors are principal since the points
// of A<s> sum to e.
std::pair<long, long> h_dims(const TorsionDivisor& d);

}  // namespace ellt::curve
