#pragma once

#include <optional>
#include <vector>

#include "ellt/curve/cyclotomic.hpp"
#include "ellt/exact/matrix.hpp"

namespace ellt::curve {

using exact::Vector;

// The k-th function of the e-pole basis 1, x, y, x^2, xy, x^3, ...;
// pole order 0 for k = 0 and k + 1 otherwise.
FuncElt pole_monomial(long k);
// Coordinates of a polynomial function in the e-pole basis, padded to n;
// nullopt when it needs more than n terms. g must be polynomial.
std::optional<Vector> pole_coordinates(const FuncElt& g, std::size_t n);

// Basis of H^0(O(D)): the first h0(D) e-pole monomials divided by t*(D).
std::vector<FuncElt> rr_basis(const CycCache& cache, const TorsionDivisor& d);
// Coordinates of f against rr_basis(D), or nullopt when f is not in H^0(O(D)).
// Throws UnsupportedPoles for poles off the classes <= cache.pole_bound().
std::optional<Vector> rr_coordinates(const CycCache& cache, const FuncElt& f, const TorsionDivisor& d);
bool membership(const CycCache& cache, const FuncElt& f, const TorsionDivisor& d);

// Smallest divisor of the form n_1 (e) + sum n_s A<s> seen to bound the poles
// of f from its denominator; f lies in H^0(O(E)). Throws UnsupportedPoles.
TorsionDivisor enclosing_divisor(const CycCache& cache, const FuncElt& f);
// Minimum valuation of f over the points of A<s>; f != 0.
long ord_along(const CycCache& cache, const FuncElt& f, long s);

// O / I^k along A<s> for s >= 2, presented through (u, v) of u + v y.
// For s >= 3 the ideal is (P_s^k) on both components. At 2-torsion y is the
// local parameter and x - e_i is a unit times y^2, so v only needs
// P_2^{floor(k/2)} while u needs P_2^{ceil(k/2)}.
class LocalQuotient {
 public:
  LocalQuotient(const CycCache& cache, long s, long k);
  long s() const { return s_; }
  long depth() const { return k_; }
  std::size_t dim() const { return static_cast<std::size_t>(mu_.degree() + mv_.degree()); }
  // Class of (u + v y)/d with d invertible along A<s>.
  Vector coordinates(const FuncElt& g) const;
  // Class of the polynomial function u + v y.
  Vector coordinates(const Poly& u, const Poly& v) const;
  const Poly& u_modulus() const { return mu_; }
  const Poly& v_modulus() const { return mv_; }
  // u + v y with u, v of the reduced degrees.
  FuncElt representative(const Vector& coords) const;

 private:
  long s_;
  long k_;
  Poly mu_;  // modulus for u
  Poly mv_;  // modulus for v
};

// Class of f in O(depth A<s>)/O along A<s>: coordinates of t_s^depth f in
// LocalQuotient(s, depth) for s >= 2, and the coefficients of t_e^-depth ..
// t_e^-1 for s = 1. Throws DepthExceeded when ord_along(f, s) < -depth.
Vector principal_part(const CycCache& cache, const FuncElt& f, long s, long depth);

// f Dt.
struct MeromorphicDifferential {
  FuncElt coefficient;
};

Rational residue_at_e(const CycCache& cache, const MeromorphicDifferential& w);
// Throws PrecisionExhausted unless prec covers the pole order at e.
Rational residue_at_e(const CycCache& cache, const MeromorphicDifferential& w, std::size_t prec);
// Sum of residues over the points of A<s> (s = 1 is the residue at e).
Rational residue_along(const CycCache& cache, const MeromorphicDifferential& w, long s);

}  // namespace ellt::curve
