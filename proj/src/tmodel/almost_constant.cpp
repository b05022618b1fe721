#include "ellt/tmodel/almost_constant.hpp"

#include <set>

#include "ellt/errors.hpp"

namespace ellt::tmodel {

AlmostConstant::AlmostConstant(long tail, const std::map<long, long>& values) : tail_(tail) {
  for (auto [s, v] : values) {
    if (s < 1) throw ValidationError("almost constant function indexed by order < 1");
    if (v != tail_) dev_[s] = v;
  }
}

AlmostConstant AlmostConstant::indicator(long s, long value) { return AlmostConstant(0, {{s, value}}); }

long AlmostConstant::operator()(long s) const {
  auto it = dev_.find(s);
  return it == dev_.end() ? tail_ : it->second;
}

AlmostConstant AlmostConstant::operator-() const {
  std::map<long, long> v;
  for (auto [s, x] : dev_) v[s] = -x;
  return AlmostConstant(-tail_, v);
}

AlmostConstant operator+(const AlmostConstant& a, const AlmostConstant& b) {
  std::set<long> keys;
  for (auto& [s, x] : a.dev_) keys.insert(s);
  for (auto& [s, x] : b.dev_) keys.insert(s);
  std::map<long, long> v;
  for (long s : keys) v[s] = a(s) + b(s);
  return AlmostConstant(a.tail_ + b.tail_, v);
}

bool AlmostConstant::geq(const AlmostConstant& o) const {
  if (tail_ < o.tail_) return false;
  for (auto& [s, x] : dev_)
    if (x < o(s)) return false;
  for (auto& [s, x] : o.dev_)
    if ((*this)(s) < x) return false;
  return true;
}

TorsionDivisor AlmostConstant::window_divisor() const {
  TorsionDivisor d;
  for (auto [s, x] : dev_) d.set(s, x - tail_);
  return d;
}

std::string to_string(const AlmostConstant& w) {
  std::string out = "{tail " + std::to_string(w.tail());
  for (auto [s, x] : w.deviations()) out += ", " + std::to_string(s) + ": " + std::to_string(x);
  return out + "}";
}

EulerClassSymbol::EulerClassSymbol(AlmostConstant exponent) : exponent_(std::move(exponent)) {
  if (exponent_.tail() != 0) throw ValidationError("Euler class exponent must have tail 0");
  for (auto [s, x] : exponent_.deviations())
    if (x < 0) throw ValidationError("Euler class exponent must be nonnegative");
}

Representation Representation::z(long n, long a) {
  if (n < 1) throw ValidationError("representation weight z^n needs n >= 1");
  Representation r;
  if (a != 0) r.multiplicities[n] = a;
  return r;
}

Representation Representation::operator-() const {
  Representation r;
  for (auto [n, a] : multiplicities) r.multiplicities[n] = -a;
  r.fixed_part = -fixed_part;
  return r;
}

Representation operator+(const Representation& a, const Representation& b) {
  Representation r = a;
  for (auto [n, x] : b.multiplicities) {
    long v = r.multiplicities[n] + x;
    if (v == 0)
      r.multiplicities.erase(n);
    else
      r.multiplicities[n] = v;
  }
  r.fixed_part += b.fixed_part;
  return r;
}

std::string to_string(const Representation& w) {
  if (w.is_zero()) return "0";
  std::string out;
  auto term = [&](long a, const std::string& name) {
    if (a == 0) return;
    if (!out.empty() || a < 0) out += a < 0 ? "-" : "+";
    long m = a < 0 ? -a : a;
    if (m != 1) out += std::to_string(m);
    out += name;
  };
  for (auto [n, a] : w.multiplicities) term(a, n == 1 ? "z" : "z^" + std::to_string(n));
  term(w.fixed_part, "e");
  return out;
}

AlmostConstant dim_fn(const Representation& w) {
  std::map<long, long> values;
  for (auto [n, a] : w.multiplicities) {
    if (n < 1) throw ValidationError("representation weight z^n needs n >= 1");
    for (long s = 1; s <= n; ++s)
      if (n % s == 0) values[s] += a;
  }
  for (auto& [s, v] : values) v += w.fixed_part;
  return AlmostConstant(w.fixed_part, values);
}

}  // namespace ellt::tmodel
