#include "ellt/curve/curve.hpp"

#include <algorithm>

#include "ellt/errors.hpp"

namespace ellt::curve {

using exact::is_zero;

WeierstrassCurve::WeierstrassCurve(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (is_zero(4 * a_ * a_ * a_ + 27 * b_ * b_))
    throw ValidationError("singular curve: 4a^3 + 27b^2 = 0 for a=" + exact::to_string(a_) +
                          ", b=" + exact::to_string(b_));
  rhs_ = Poly{b_, a_, Rational(0), Rational(1)};
}

Rational WeierstrassCurve::discriminant() const { return -16 * (4 * a_ * a_ * a_ + 27 * b_ * b_); }

std::string WeierstrassCurve::key() const { return exact::to_string(a_) + "," + exact::to_string(b_); }

FuncElt::FuncElt(Poly u, Poly v, Poly d) : u_(std::move(u)), v_(std::move(v)), d_(std::move(d)) {
  if (d_.is_zero()) throw DivisionByZero("function with zero denominator");
  if (u_.is_zero() && v_.is_zero()) {
    d_ = Poly::constant(Rational(1));
    return;
  }
  if (d_.degree() > 0) {
    Poly g = exact::poly_gcd(exact::poly_gcd(u_, v_), d_);
    if (g.degree() > 0) {
      u_ = u_ / g;
      v_ = v_ / g;
      d_ = d_ / g;
    }
  }
  Rational inv = 1 / d_.lead();
  if (inv != 1) {
    u_ *= inv;
    v_ *= inv;
    d_ *= inv;
  }
}

FuncElt FuncElt::constant(const Rational& c) { return FuncElt(Poly::constant(c), Poly{}, Poly::constant(Rational(1))); }
FuncElt FuncElt::from_x(const Poly& p) { return FuncElt(p, Poly{}, Poly::constant(Rational(1))); }
FuncElt FuncElt::x() { return from_x(Poly::x()); }
FuncElt FuncElt::y() { return FuncElt(Poly{}, Poly::constant(Rational(1)), Poly::constant(Rational(1))); }

FuncElt FuncElt::operator-() const {
  FuncElt r = *this;
  r.u_ = -r.u_;
  r.v_ = -r.v_;
  return r;
}

FuncElt FuncElt::scaled(const Rational& c) const {
  if (exact::is_zero(c)) return FuncElt{};
  FuncElt r = *this;
  r.u_ *= c;
  r.v_ *= c;
  return r;
}

FuncElt add(const FuncElt& f, const FuncElt& g) {
  if (f.d() == g.d()) return FuncElt(f.u() + g.u(), f.v() + g.v(), f.d());
  Poly h = exact::poly_gcd(f.d(), g.d());
  Poly fo = f.d() / h;  // cofactors
  Poly go = g.d() / h;
  return FuncElt(f.u() * go + g.u() * fo, f.v() * go + g.v() * fo, f.d() * go);
}

FuncElt sub(const FuncElt& f, const FuncElt& g) { return add(f, -g); }

FuncElt mul(const WeierstrassCurve& c, const FuncElt& f, const FuncElt& g) {
  if (f.is_zero() || g.is_zero()) return FuncElt{};
  Poly u = f.u() * g.u() + f.v() * g.v() * c.rhs();
  Poly v = f.u() * g.v() + g.u() * f.v();
  return FuncElt(std::move(u), std::move(v), f.d() * g.d());
}

FuncElt inv(const WeierstrassCurve& c, const FuncElt& f) {
  if (f.is_zero()) throw DivisionByZero("inverse of the zero function");
  // 1/(u + v y) = (u - v y)/(u^2 - v^2 f); the norm is nonzero since y is not in Q(x).
  Poly norm = f.u() * f.u() - f.v() * f.v() * c.rhs();
  return FuncElt(f.d() * f.u(), -(f.d() * f.v()), norm);
}

FuncElt div(const WeierstrassCurve& c, const FuncElt& f, const FuncElt& g) { return mul(c, f, inv(c, g)); }

FuncElt pow(const WeierstrassCurve& c, const FuncElt& f, long exponent) {
  if (exponent < 0) return pow(c, inv(c, f), -exponent);
  FuncElt result = FuncElt::constant(Rational(1));
  FuncElt base = f;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result = mul(c, result, base);
    e >>= 1;
    if (e != 0) base = mul(c, base, base);
  }
  return result;
}

FuncElt ff_arith(const WeierstrassCurve& c, FieldOp op, const FuncElt& f, const FuncElt* g) {
  switch (op) {
    case FieldOp::add:
      if (!g) throw ValidationError("add needs two arguments");
      return add(f, *g);
    case FieldOp::mul:
      if (!g) throw ValidationError("mul needs two arguments");
      return mul(c, f, *g);
    case FieldOp::inv:
      return inv(c, f);
  }
  throw ValidationError("unknown field operation");
}

namespace {

// Pole order of u + v y at e (x has pole 2, y has pole 3).
long numerator_pole(const FuncElt& f, bool* from_v) {
  long pu = f.u().is_zero() ? -1 : 2 * f.u().degree();
  long pv = f.v().is_zero() ? -1 : 2 * f.v().degree() + 3;
  *from_v = pv > pu;
  return std::max(pu, pv);
}

}  // namespace

long ord_e(const FuncElt& f) {
  if (f.is_zero()) throw DivisionByZero("valuation of the zero function");
  bool from_v;
  return 2 * f.d().degree() - numerator_pole(f, &from_v);
}

Rational lead_at_e(const FuncElt& f) {
  if (f.is_zero()) throw DivisionByZero("leading coefficient of the zero function");
  // x = t^-2 (1 + ...) and y = t^-3 (1 + ...), so only leading coefficients matter.
  bool from_v;
  numerator_pole(f, &from_v);
  const Rational& top = from_v ? f.v().lead() : f.u().lead();
  return top / f.d().lead();
}

std::string to_string(const FuncElt& f) {
  return "(" + exact::to_string(f.u()) + "; " + exact::to_string(f.v()) + "; " + exact::to_string(f.d()) + ")";
}

FuncElt parse_funcelt(std::string_view text) {
  std::size_t b = text.find('(');
  std::size_t e = text.rfind(')');
  if (b == std::string_view::npos || e == std::string_view::npos || e < b)
    throw ValidationError("function text must look like '(u; v; d)': '" + std::string(text) + "'");
  std::string_view body = text.substr(b + 1, e - b - 1);
  std::size_t s1 = body.find(';');
  std::size_t s2 = s1 == std::string_view::npos ? s1 : body.find(';', s1 + 1);
  if (s2 == std::string_view::npos || body.find(';', s2 + 1) != std::string_view::npos)
    throw ValidationError("function text needs exactly three components: '" + std::string(text) + "'");
  return FuncElt(exact::parse_poly(body.substr(0, s1)), exact::parse_poly(body.substr(s1 + 1, s2 - s1 - 1)),
                 exact::parse_poly(body.substr(s2 + 1)));
}

LaurentSeries LocalExpansion::unit_part(std::size_t prec) const {
  std::lock_guard lock(mu_);
  if (x_unit_.size() < prec) {
    std::size_t p = std::max(prec, 2 * x_unit_.size());
    // S_n = a [t^{n-4}] S^2 + b [t^{n-6}] S^3; S^2 and S^3 are grown alongside.
    std::vector<Rational> s(p), s2(p), s3(p);
    Rational t;
    for (std::size_t n = 0; n < p; ++n) {
      if (n == 0) {
        s[0] = 1;
      } else {
        if (n >= 4 && !is_zero(curve_.a())) s[n] += curve_.a() * s2[n - 4];
        if (n >= 6 && !is_zero(curve_.b())) s[n] += curve_.b() * s3[n - 6];
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (is_zero(s[i]) || is_zero(s[n - i])) continue;
        t = s[i] * s[n - i];
        s2[n] += t;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (is_zero(s2[i]) || is_zero(s[n - i])) continue;
        t = s2[i] * s[n - i];
        s3[n] += t;
      }
    }
    x_unit_ = exact::series_reciprocal(LaurentSeries(0, std::move(s)), p).coeffs();
  }
  return LaurentSeries(0, std::vector<Rational>(x_unit_.begin(), x_unit_.begin() + static_cast<long>(prec)));
}

namespace {

// p(x) as a series, p of degree n: x^i = t^{-2i} X^i, so p(x) t^{2n} = sum p_i X^i t^{2(n-i)}.
LaurentSeries poly_in_x(const Poly& p, const LaurentSeries& X, std::size_t prec) {
  const long n = p.degree();
  const LaurentSeries t2 = LaurentSeries::monomial(Rational(1), 2, prec);
  LaurentSeries acc = LaurentSeries::monomial(p.lead(), 0, prec);
  for (long i = n - 1; i >= 0; --i) {
    acc = acc * X;
    if (!is_zero(p.coeff(static_cast<std::size_t>(i))))
      acc = acc + pow(t2, n - i) * p.coeff(static_cast<std::size_t>(i));
  }
  return acc.shifted(-2 * n);
}

}  // namespace

LaurentSeries LocalExpansion::expand(const FuncElt& f, std::size_t prec) const {
  if (prec == 0) throw PrecisionExhausted("expansion needs precision >= 1");
  if (f.is_zero()) throw ZeroSeries();
  // No cancellation between the two terms of the numerator, so working
  // precision prec on unit parts gives relative precision prec.
  LaurentSeries X = unit_part(prec);
  LaurentSeries num;
  bool have = false;
  if (!f.u().is_zero()) {
    num = poly_in_x(f.u(), X, prec);
    have = true;
  }
  if (!f.v().is_zero()) {
    // y = t^-3 X.
    LaurentSeries vy = poly_in_x(f.v(), X, prec) * X;
    vy = vy.shifted(-3);
    num = have ? num + vy : vy;
  }
  LaurentSeries den = poly_in_x(f.d(), X, prec);
  LaurentSeries r = num * exact::series_reciprocal(den, prec);
  if (r.is_zero()) throw PrecisionExhausted("expansion cancelled to zero");
  return r.truncated(prec);
}

LaurentSeries LocalExpansion::half_dx_over_y(std::size_t prec) const {
  // x = t^-2 X gives dx/dt = t^-3 (t X' - 2X), y = t^-3 X.
  LaurentSeries X = unit_part(prec + 1);
  LaurentSeries tx = X.derivative().shifted(1);
  LaurentSeries q = tx * exact::series_reciprocal(X, prec + 1);
  LaurentSeries r = q * Rational(1, 2) - LaurentSeries::one(prec + 1);
  return r.truncated_absolute(static_cast<long>(prec));
}

LaurentSeries expand_at_e(const WeierstrassCurve& c, const FuncElt& f, std::size_t prec) {
  return LocalExpansion(c).expand(f, prec);
}

}  // namespace ellt::curve
