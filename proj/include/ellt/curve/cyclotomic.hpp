#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "ellt/curve/curve.hpp"
#include "ellt/curve/divisor.hpp"

namespace ellt::curve {

// The coordinate t_e = scale * base. The standard base is x/y.
class Coordinate {
 public:
  static Coordinate standard(const WeierstrassCurve& c, const Rational& scale = Rational(1));
  // An arbitrary function of valuation 1 at e. Torsion support of its divisor
  // is checked for orders <= validated_to when a cache is built on it.
  Coordinate(FuncElt base, Rational scale, long validated_to, bool standard = false);

  const FuncElt& base() const { return base_; }
  const Rational& scale() const { return scale_; }
  FuncElt function() const { return base_.scaled(scale_); }
  bool is_standard() const { return standard_; }
  long validated_to() const { return validated_to_; }

 private:
  FuncElt base_;
  Rational scale_;
  long validated_to_;
  bool standard_;
};

// Memo of division polynomials psi_n, primitive factors and the normalized
// t_s for one (curve, coordinate). All methods are safe to call concurrently;
// entries are validated before they become visible.
class CycCache {
 public:
  // pole_bound: the largest order class on which poles are recognized.
  CycCache(WeierstrassCurve curve, Coordinate coordinate, long pole_bound = 12);

  const WeierstrassCurve& curve() const { return expansion_.curve(); }
  const Coordinate& coordinate() const { return coordinate_; }
  const FuncElt& t_e() const { return t_e_; }
  // Coefficient of t in the expansion of t_e; t = x/y.
  const Rational& lambda() const { return lambda_; }
  // True when every zero and pole of t_e away from e lies on A<s> for some
  // s <= coordinate().validated_to().
  bool coordinate_verified() const { return coordinate_verified_; }
  long pole_bound() const { return pole_bound_; }
  const LocalExpansion& expansion() const { return expansion_; }

  FuncElt division_psi(long n) const;
  // psi_s divided by the primitive factors of the proper divisors r > 1 of s.
  FuncElt primitive_factor(long s) const;
  // Normalized so that t_e^{|A<s>|} t_s takes the value 1 at e; s >= 2.
  FuncElt cyclotomic_t(long s) const;
  // t_s = normalizer(s) * primitive_factor(s).
  Rational normalizer(long s) const;
  // Monic polynomial in x vanishing exactly on the x-coordinates of A<s>, s >= 2.
  Poly torsion_poly(long s) const;
  // prod_{b >= 2} t_b^{n_b}.
  FuncElt t_star(const TorsionDivisor& d) const;
  // For each s in 2..bound, the largest multiplicity in p of a root of P_s;
  // nullopt when p keeps roots off these classes. p must be nonzero.
  std::optional<std::map<long, unsigned>> torsion_factorization(const Poly& p, long bound) const;

  // Expansion in t = x/y of t_s (s >= 2) or of t_e (s = 1), relative precision prec.
  LaurentSeries t_series(long s, std::size_t prec) const;
  // Re-expands a series in t as a series in t_e.
  LaurentSeries in_coordinate(const LaurentSeries& f) const;
  // Dt/dt, with Dt = -lambda dx/(2y) agreeing with dt_e at e.
  LaurentSeries dt_series(std::size_t prec) const;

  // Accepts a stored psi_n after checking ord_e(psi_n) = -(n^2 - 1).
  void preload_psi(long n, const FuncElt& psi) const;
  std::map<long, FuncElt> psi_snapshot() const;

 private:
  FuncElt psi_locked(long n) const;
  FuncElt primitive_locked(long s) const;
  void build_t_locked(long s) const;
  LaurentSeries reversion(std::size_t prec) const;

  LocalExpansion expansion_;
  Coordinate coordinate_;
  FuncElt t_e_;
  Rational lambda_;
  long pole_bound_;
  bool coordinate_verified_ = false;

  mutable std::recursive_mutex mu_;
  mutable std::map<long, FuncElt> psi_;
  mutable std::map<long, FuncElt> primitive_;
  mutable std::map<long, FuncElt> t_;
  mutable std::map<long, Rational> scalar_;
  mutable std::map<long, Poly> torsion_poly_;
  mutable std::map<long, LaurentSeries> series_;
  mutable LaurentSeries reversion_;  // t as a series in t_e, non-standard coordinates only
};

}  // namespace ellt::curve
