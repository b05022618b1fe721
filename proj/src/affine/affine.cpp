#include "ellt/affine/affine.hpp"

#include <algorithm>

#include "ellt/errors.hpp"

namespace ellt::affine {

using exact::Matrix;
using exact::Vector;

namespace {

const Poly& one_poly() {
  static const Poly one = Poly::constant(Rational(1));
  return one;
}

}  // namespace

LaurentFn::LaurentFn(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("LaurentFn with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = one_poly();
    return;
  }
  Poly g = exact::poly_gcd(num, den);
  num = exact::exact_quotient(num, g);
  den = exact::exact_quotient(den, g);
  Rational l = den.lead();
  num_ = num * (Rational(1) / l);
  den_ = den.monic();
}

LaurentFn operator*(const LaurentFn& a, const LaurentFn& b) { return LaurentFn(a.num_ * b.num_, a.den_ * b.den_); }

LaurentFn operator+(const LaurentFn& a, const LaurentFn& b) {
  return LaurentFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

LaurentFn LaurentFn::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero LaurentFn");
  return LaurentFn(den_, num_);
}

LaurentFn LaurentFn::pow(long e) const {
  LaurentFn base = e < 0 ? inverse() : *this;
  unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
  return LaurentFn(exact::pow(base.num_, k), exact::pow(base.den_, k));
}

std::string to_string(const LaurentFn& f) { return exact::to_string(f.num()) + " / " + exact::to_string(f.den()); }

Poly AffineGroupData::coordinate() const {
  if (kind_ == AffineKind::additive) return Poly::x();
  return Poly{Rational(1), Rational(-1)};
}

Poly AffineGroupData::multiply_by(long n) const {
  if (n < 1) throw ValidationError("multiplication by n needs n >= 1");
  if (kind_ == AffineKind::additive) return Poly::monomial(Rational(n), 1);
  return one_poly() - Poly::monomial(Rational(1), static_cast<std::size_t>(n));
}

Poly AffineGroupData::phi(long s) const {
  if (s < 1) throw ValidationError("phi_s needs s >= 1");
  std::lock_guard lock(mu_);
  if (auto it = phi_.find(s); it != phi_.end()) return it->second;
  Poly acc = multiply_by(s);
  for (long r = 1; r < s; ++r)
    if (s % r == 0) acc = exact::exact_quotient(acc, phi(r));
  phi_.emplace(s, acc);
  return acc;
}

LaurentFn AffineGroupData::euler_class(long n) const { return LaurentFn::poly(multiply_by(n)); }

LaurentFn AffineGroupData::euler_class(const Representation& w) const {
  LaurentFn acc;
  for (auto [n, a] : w.multiplicities) acc = acc * euler_class(n).pow(a);
  return acc;
}

LaurentFn euler_class(const AffineGroupData& g, long n) { return g.euler_class(n); }
LaurentFn euler_class(const AffineGroupData& g, const Representation& w) { return g.euler_class(w); }
LaurentFn phi(const AffineGroupData& g, long s) { return LaurentFn::poly(g.phi(s)); }

SphereModule affine_sphere_module(const AffineGroupData& g, const Representation& w) {
  if (w.fixed_part != 0) throw ValidationError("affine sphere module needs W^T = 0");
  return SphereModule{g.euler_class(w), 1};
}

Poly AffineBackend::denominator(const Caps& caps) const {
  Poly den = one_poly();
  for (auto [s, b] : caps.bound.coeffs())
    if (b > 0) den = den * exact::pow(g_->phi(s), static_cast<unsigned>(b));
  return den;
}

long AffineBackend::low_exponent(const Caps& caps) const {
  return g_->kind() == AffineKind::multiplicative ? -caps.span : 0;
}

std::size_t AffineBackend::window_dim(const Caps& caps) const {
  if (caps.span < 0) throw ValidationError("window span must be nonnegative");
  long deg = 0;
  for (auto [s, b] : caps.bound.coeffs())
    if (b > 0) deg += b * class_size(s);
  long lo = low_exponent(caps), hi = caps.span + deg;
  return static_cast<std::size_t>(hi - lo + 1);
}

Matrix AffineBackend::block(const Caps& caps, long s, long lower) const {
  const std::size_t cols = window_dim(caps);
  const long top = std::max(0L, caps.bound[s]);
  const long k = top - lower;
  const long fdeg = class_size(s);
  if (k <= 0 || fdeg == 0) return Matrix(0, cols);
  const Poly m = exact::pow(g_->phi(s), static_cast<unsigned>(k));
  Poly rest = one_poly();
  for (auto [r, b] : caps.bound.coeffs())
    if (r != s && b > 0) rest = (rest * exact::pow_mod(g_->phi(r), static_cast<unsigned long>(b), m)) % m;
  Poly inv = exact::inverse_mod(rest, m);
  const std::size_t rows = static_cast<std::size_t>(k * fdeg);
  Matrix out(rows, cols);
  // Columns in ascending exponent: z^lo * inv, then multiply by z.
  const long lo = low_exponent(caps);
  Poly cur = inv;
  if (lo < 0) cur = (cur * exact::pow_mod(exact::inverse_mod(Poly::x(), m), static_cast<unsigned long>(-lo), m)) % m;
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = cur.coeff(r);
    cur = cur.shifted(1) % m;
  }
  return out;
}

bool AffineBackend::certifies(const Caps& caps, const TorsionDivisor& lower) const {
  if (caps.span < 0) return false;
  for (auto [s, b] : caps.bound.coeffs())
    if (b < 0) return false;
  for (auto [s, n] : caps.step.coeffs())
    if (n < 0) return false;
  for (auto [s, n] : lower.coeffs())
    if (caps.bound[s] < n) return false;
  const long deg = degree(lower);
  const long width = g_->kind() == AffineKind::multiplicative ? 2 * caps.span + 1 : caps.span + 1;
  return width + deg >= 0;
}

Caps AffineBackend::default_caps(const TorsionDivisor& lower) const {
  TorsionDivisor step = TorsionDivisor::identity();
  for (auto [s, n] : lower.coeffs()) step.set(s, 1);
  Caps c;
  c.bound = pointwise_max(lower, TorsionDivisor()) + step;
  c.step = step;
  c.span = std::max(0L, -degree(lower));
  return c;
}

LaurentFn AffineBackend::element(const Caps& caps, const Vector& coords) const {
  if (coords.size() != window_dim(caps)) throw ValidationError("window coordinates have the wrong length");
  std::vector<Rational> c(coords.begin(), coords.end());
  Poly num(std::move(c));
  Poly den = denominator(caps);
  if (g_->kind() == AffineKind::multiplicative && caps.span > 0)
    den = den * Poly::monomial(Rational(1), static_cast<std::size_t>(caps.span));
  return LaurentFn(num, den);
}

std::string AffineBackend::element_text(const Caps& caps, const Vector& coords) const {
  return to_string(element(caps, coords));
}

tmodel::ASObject affine_object(std::shared_ptr<const AffineGroupData> g) {
  auto backend = std::make_shared<AffineBackend>(std::move(g));
  return tmodel::ASObject(backend, [](const tmodel::AlmostConstant& w) { return w.window_divisor(); });
}

AffineSphereResult affine_sphere_pipeline(std::shared_ptr<const AffineGroupData> g, const Representation& w,
                                          int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("sphere sign must be +1 or -1");
  tmodel::ASObject obj = affine_object(g);
  const tmodel::AlmostConstant dim = tmodel::dim_fn(sign > 0 ? w : -w);
  AffineSphereResult res;
  res.stable = tmodel::hom_from_sphere(obj, dim);
  res.h0 = res.stable.hom_dim;
  res.h1 = res.stable.ext_dim;
  Representation bare = w;
  bare.fixed_part = 0;
  res.generator = g->euler_class(bare).pow(-sign);
  const auto& backend = static_cast<const AffineBackend&>(obj.backend());
  const LaurentFn chi = g->euler_class(bare).pow(sign);
  bool ok = true;
  for (const Vector& v : res.stable.first.kernel) {
    LaurentFn h = backend.element(res.stable.caps, v) * chi;
    const Poly& d = h.den();
    bool laurent = g->kind() == AffineKind::multiplicative
                       ? d == Poly::monomial(Rational(1), static_cast<std::size_t>(d.degree()))
                       : d.degree() == 0;
    ok = ok && laurent;
  }
  const tmodel::Caps& c = res.stable.caps;
  const long deg = backend.degree(obj.lower(dim));
  const long width = g->kind() == AffineKind::multiplicative ? 2 * c.span + 1 : c.span + 1;
  res.generator_ok = ok && static_cast<long>(res.h0) == width + deg;
  return res;
}

}  // namespace ellt::affine
