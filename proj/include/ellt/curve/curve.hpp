#pragma once

#include <mutex>
#include <string>
#include <string_view>

#include "ellt/exact/poly.hpp"
#include "ellt/exact/series.hpp"

namespace ellt::curve {

using exact::LaurentSeries;
using exact::Poly;
using exact::Rational;

// y^2 = x^3 + a x + b over Q.
class WeierstrassCurve {
 public:
  // Throws ValidationError when 4a^3 + 27b^2 = 0.
  WeierstrassCurve(Rational a, Rational b);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  // x^3 + a x + b.
  const Poly& rhs() const { return rhs_; }
  Rational discriminant() const;
  // "a,b" in rational text; used as a cache key.
  std::string key() const;

  friend bool operator==(const WeierstrassCurve& l, const WeierstrassCurve& r) {
    return l.a_ == r.a_ && l.b_ == r.b_;
  }

 private:
  Rational a_;
  Rational b_;
  Poly rhs_;
};

// (u(x) + v(x) y) / d(x) with d monic and gcd(u, v, d) = 1. Zero is (0; 0; 1).
class FuncElt {
 public:
  FuncElt() : d_(Poly::constant(Rational(1))) {}
  // Canonicalizes; throws DivisionByZero when d = 0.
  FuncElt(Poly u, Poly v, Poly d);

  static FuncElt constant(const Rational& c);
  static FuncElt from_x(const Poly& p);
  static FuncElt x();
  static FuncElt y();

  const Poly& u() const { return u_; }
  const Poly& v() const { return v_; }
  const Poly& d() const { return d_; }
  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  // Element of the affine coordinate ring Q[x, y].
  bool is_polynomial() const { return d_.degree() == 0; }
  bool is_constant() const { return v_.is_zero() && u_.is_constant() && d_.degree() == 0; }

  FuncElt operator-() const;
  FuncElt scaled(const Rational& c) const;

  friend bool operator==(const FuncElt& a, const FuncElt& b) = default;

 private:
  Poly u_;
  Poly v_;
  Poly d_;
};

// Field operations of K(A); y^2 is reduced through the curve equation.
FuncElt add(const FuncElt& f, const FuncElt& g);
FuncElt sub(const FuncElt& f, const FuncElt& g);
FuncElt mul(const WeierstrassCurve& c, const FuncElt& f, const FuncElt& g);
// Throws DivisionByZero on zero.
FuncElt inv(const WeierstrassCurve& c, const FuncElt& f);
FuncElt div(const WeierstrassCurve& c, const FuncElt& f, const FuncElt& g);
FuncElt pow(const WeierstrassCurve& c, const FuncElt& f, long exponent);

enum class FieldOp { add, mul, inv };
FuncElt ff_arith(const WeierstrassCurve& c, FieldOp op, const FuncElt& f, const FuncElt* g = nullptr);

// Valuation at the identity: ord(x) = -2 and ord(y) = -3 have opposite
// parity, so u(x) and v(x) y never cancel. Throws DivisionByZero on 0.
long ord_e(const FuncElt& f);
// Coefficient of t^{ord_e f} in the expansion in t = x/y.
Rational lead_at_e(const FuncElt& f);

// "(u; v; d)" with each component in polynomial text format.
std::string to_string(const FuncElt& f);
FuncElt parse_funcelt(std::string_view text);

// Expansions in the local parameter t = x/y at the identity. With s = 1/y the
// curve equation becomes s = t^3 + a t s^2 + b s^3; writing s = t^3 S gives
// S = 1 + a t^4 S^2 + b t^6 S^3, solved coefficient by coefficient. Then
// x = t^{-2}/S and y = t^{-3}/S.
class LocalExpansion {
 public:
  explicit LocalExpansion(WeierstrassCurve curve) : curve_(std::move(curve)) {}

  const WeierstrassCurve& curve() const { return curve_; }
  // The power series 1/S to absolute precision prec.
  LaurentSeries unit_part(std::size_t prec) const;
  // Relative precision prec; f must be nonzero.
  LaurentSeries expand(const FuncElt& f, std::size_t prec) const;
  // (dx / 2y) / dt = -1 + t X'/(2X) with X = 1/S.
  LaurentSeries half_dx_over_y(std::size_t prec) const;

 private:
  WeierstrassCurve curve_;
  mutable std::mutex mu_;
  mutable std::vector<Rational> x_unit_;  // coefficients of 1/S
};

// The expand operation on a free-standing curve.
LaurentSeries expand_at_e(const WeierstrassCurve& c, const FuncElt& f, std::size_t prec);

}  // namespace ellt::curve
