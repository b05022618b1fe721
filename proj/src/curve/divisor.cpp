#include "ellt/curve/divisor.hpp"

#include <algorithm>

#include "ellt/errors.hpp"

namespace ellt::curve {

long exact_order_count(long s) {
  if (s < 1) throw ValidationError("order class must be >= 1, got " + std::to_string(s));
  long result = 1;
  long n = s;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    long pk = 1;
    while (n % p == 0) {
      n /= p;
      pk *= p;
    }
    result *= pk * pk - (pk / p) * (pk / p);
  }
  if (n > 1) result *= n * n - 1;
  return result;
}

TorsionDivisor::TorsionDivisor(std::map<long, long> coeffs) {
  for (auto [s, n] : coeffs) set(s, n);
}

TorsionDivisor TorsionDivisor::point(long s, long n) {
  TorsionDivisor d;
  d.set(s, n);
  return d;
}

TorsionDivisor TorsionDivisor::full_torsion(long n, long mult) {
  if (n < 1) throw ValidationError("A[n] needs n >= 1");
  TorsionDivisor d;
  for (long s = 1; s <= n; ++s)
    if (n % s == 0) d.set(s, mult);
  return d;
}

long TorsionDivisor::operator[](long s) const {
  auto it = c_.find(s);
  return it == c_.end() ? 0 : it->second;
}

void TorsionDivisor::set(long s, long n) {
  if (s < 1) throw ValidationError("order class must be >= 1, got " + std::to_string(s));
  if (n == 0)
    c_.erase(s);
  else
    c_[s] = n;
}

long TorsionDivisor::degree() const {
  long deg = 0;
  for (auto [s, n] : c_) deg += n * exact_order_count(s);
  return deg;
}

TorsionDivisor TorsionDivisor::operator-() const {
  TorsionDivisor d = *this;
  for (auto& [s, n] : d.c_) n = -n;
  return d;
}

TorsionDivisor& TorsionDivisor::operator+=(const TorsionDivisor& o) {
  for (auto [s, n] : o.c_) set(s, (*this)[s] + n);
  return *this;
}

TorsionDivisor& TorsionDivisor::operator-=(const TorsionDivisor& o) {
  for (auto [s, n] : o.c_) set(s, (*this)[s] - n);
  return *this;
}

TorsionDivisor operator*(long k, const TorsionDivisor& d) {
  TorsionDivisor r;
  for (auto [s, n] : d.c_) r.set(s, k * n);
  return r;
}

bool TorsionDivisor::geq(const TorsionDivisor& o) const {
  for (auto [s, n] : c_)
    if (n < o[s]) return false;
  for (auto [s, n] : o.c_)
    if ((*this)[s] < n) return false;
  return true;
}

TorsionDivisor pointwise_max(const TorsionDivisor& a, const TorsionDivisor& b) {
  TorsionDivisor r;
  for (auto [s, n] : a.coeffs()) r.set(s, std::max(n, b[s]));
  for (auto [s, n] : b.coeffs()) r.set(s, std::max(n, a[s]));
  return r;
}

std::string to_string(const TorsionDivisor& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (auto [s, n] : d.coeffs()) {
    if (!out.empty()) out += ',';
    out += std::to_string(s) + ':' + std::to_string(n);
  }
  return out;
}

std::pair<long, long> h_dims(const TorsionDivisor& d) {
  long deg = d.degree();
  if (deg > 0) return {deg, 0};
  if (deg < 0) return {0, -deg};
  return {1, 1};
}

}  // namespace ellt::curve
