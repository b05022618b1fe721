#include "ellt/curve/riemann_roch.hpp"

#include "ellt/errors.hpp"

namespace ellt::curve {

using exact::is_zero;

FuncElt pole_monomial(long k) {
  if (k < 0) throw ValidationError("monomial index must be >= 0");
  if (k == 0) return FuncElt::constant(Rational(1));
  long p = k + 1;
  if (p % 2 == 0) return FuncElt::from_x(Poly::monomial(Rational(1), static_cast<std::size_t>(p / 2)));
  return FuncElt(Poly{}, Poly::monomial(Rational(1), static_cast<std::size_t>((p - 3) / 2)),
                 Poly::constant(Rational(1)));
}

std::optional<Vector> pole_coordinates(const FuncElt& g, std::size_t n) {
  if (!g.is_polynomial()) throw ValidationError("pole coordinates need a polynomial function");
  Vector out(n);
  const Rational& scale = g.d().lead();  // d = 1 after canonicalization
  const auto& uc = g.u().coeffs();
  for (std::size_t i = 0; i < uc.size(); ++i) {
    if (is_zero(uc[i])) continue;
    std::size_t idx = i == 0 ? 0 : 2 * i - 1;
    if (idx >= n) return std::nullopt;
    out[idx] = uc[i] / scale;
  }
  const auto& vc = g.v().coeffs();
  for (std::size_t i = 0; i < vc.size(); ++i) {
    if (is_zero(vc[i])) continue;
    std::size_t idx = 2 * i + 2;
    if (idx >= n) return std::nullopt;
    out[idx] = vc[i] / scale;
  }
  return out;
}

std::vector<FuncElt> rr_basis(const CycCache& cache, const TorsionDivisor& d) {
  const long h0 = h_dims(d).first;
  std::vector<FuncElt> out;
  if (h0 == 0) return out;
  FuncElt shift = inv(cache.curve(), cache.t_star(d));
  for (long k = 0; k < h0; ++k) out.push_back(mul(cache.curve(), pole_monomial(k), shift));
  return out;
}

namespace {

std::map<long, unsigned> supported_poles(const CycCache& cache, const Poly& d) {
  if (d.degree() <= 0) return {};
  auto fac = cache.torsion_factorization(d, cache.pole_bound());
  if (!fac)
    throw UnsupportedPoles("denominator " + exact::to_string(d) + " has roots off the torsion classes of order <= " +
                           std::to_string(cache.pole_bound()));
  return *fac;
}

}  // namespace

std::optional<Vector> rr_coordinates(const CycCache& cache, const FuncElt& f, const TorsionDivisor& d) {
  const long h0 = h_dims(d).first;
  if (f.is_zero()) return Vector(static_cast<std::size_t>(h0));
  supported_poles(cache, f.d());
  if (d.degree() < 0) return std::nullopt;
  FuncElt g = mul(cache.curve(), f, cache.t_star(d));
  if (!g.is_polynomial()) return std::nullopt;
  return pole_coordinates(g, static_cast<std::size_t>(h0));
}

bool membership(const CycCache& cache, const FuncElt& f, const TorsionDivisor& d) {
  return rr_coordinates(cache, f, d).has_value();
}

TorsionDivisor enclosing_divisor(const CycCache& cache, const FuncElt& f) {
  TorsionDivisor e;
  if (f.is_zero()) return e;
  e.set(1, std::max(0L, -ord_e(f)));
  // A root of P_s of multiplicity k in d is a pole of order <= k at each of its
  // two points, or <= 2k at a 2-torsion point where x - e_i has a double zero.
  for (auto [s, k] : supported_poles(cache, f.d())) e.set(s, s == 2 ? 2L * k : static_cast<long>(k));
  return e;
}

long ord_along(const CycCache& cache, const FuncElt& f, long s) {
  if (f.is_zero()) throw DivisionByZero("valuation of the zero function");
  if (s < 1) throw ValidationError("order class must be >= 1");
  if (s == 1) return ord_e(f);
  TorsionDivisor e = enclosing_divisor(cache, f);
  long c = -e[s];
  for (;;) {
    TorsionDivisor next = e;
    next.set(s, -(c + 1));
    if (!membership(cache, f, next)) return c;
    ++c;
  }
}

LocalQuotient::LocalQuotient(const CycCache& cache, long s, long k) : s_(s), k_(k) {
  if (s < 2) throw ValidationError("local quotients along A<s> need s >= 2");
  if (k < 0) throw ValidationError("depth must be >= 0");
  Poly p = cache.torsion_poly(s);
  if (s == 2) {
    mu_ = exact::pow(p, static_cast<unsigned>((k + 1) / 2));
    mv_ = exact::pow(p, static_cast<unsigned>(k / 2));
  } else {
    mu_ = exact::pow(p, static_cast<unsigned>(k));
    mv_ = mu_;
  }
}

namespace {

void append_reduced(Vector& out, const Poly& p, const Poly& dinv, const Poly& m) {
  const std::size_t n = static_cast<std::size_t>(m.degree());
  if (n == 0) return;
  Poly r = (p * dinv) % m;
  for (std::size_t i = 0; i < n; ++i) out.push_back(r.coeff(i));
}

}  // namespace

Vector LocalQuotient::coordinates(const FuncElt& g) const {
  Vector out;
  out.reserve(dim());
  auto inverse = [&](const Poly& m) {
    if (m.degree() < 1) return Poly::constant(Rational(1));
    try {
      return exact::inverse_mod(g.d(), m);
    } catch (const DivisionByZero&) {
      throw ValidationError("function has a pole along A<" + std::to_string(s_) + ">");
    }
  };
  append_reduced(out, g.u(), inverse(mu_), mu_);
  append_reduced(out, g.v(), inverse(mv_), mv_);
  return out;
}

Vector LocalQuotient::coordinates(const Poly& u, const Poly& v) const {
  Vector out;
  out.reserve(dim());
  const Poly one = Poly::constant(Rational(1));
  append_reduced(out, u, one, mu_);
  append_reduced(out, v, one, mv_);
  return out;
}

FuncElt LocalQuotient::representative(const Vector& coords) const {
  if (coords.size() != dim()) throw ValidationError("local quotient coordinates have the wrong length");
  const std::size_t nu = static_cast<std::size_t>(mu_.degree());
  Poly u(Vector(coords.begin(), coords.begin() + static_cast<long>(nu)));
  Poly v(Vector(coords.begin() + static_cast<long>(nu), coords.end()));
  return FuncElt(std::move(u), std::move(v), Poly::constant(Rational(1)));
}

Vector principal_part(const CycCache& cache, const FuncElt& f, long s, long depth) {
  if (depth < 0) throw ValidationError("depth must be >= 0");
  const std::size_t width = static_cast<std::size_t>(depth * exact_order_count(s));
  if (f.is_zero()) return Vector(width);
  long ord = ord_along(cache, f, s);
  if (ord < -depth)
    throw DepthExceeded("pole of order " + std::to_string(-ord) + " along A<" + std::to_string(s) +
                        "> exceeds depth " + std::to_string(depth));
  if (ord >= 0) return Vector(width);
  if (s >= 2) {
    FuncElt g = mul(cache.curve(), f, pow(cache.curve(), cache.cyclotomic_t(s), depth));
    return LocalQuotient(cache, s, depth).coordinates(g);
  }
  // Valuation in t and in t_e agree.
  LaurentSeries ser = cache.in_coordinate(cache.expansion().expand(f, static_cast<std::size_t>(-ord)));
  Vector out(width);
  for (long j = -depth; j < 0; ++j) out[static_cast<std::size_t>(j + depth)] = ser.coefficient(j);
  return out;
}

Rational residue_at_e(const CycCache& cache, const MeromorphicDifferential& w) {
  if (w.coefficient.is_zero()) return Rational(0);
  long v = ord_e(w.coefficient);
  return residue_at_e(cache, w, v >= 0 ? 1 : static_cast<std::size_t>(-v));
}

Rational residue_at_e(const CycCache& cache, const MeromorphicDifferential& w, std::size_t prec) {
  const FuncElt& f = w.coefficient;
  if (f.is_zero()) return Rational(0);
  long v = ord_e(f);
  if (v >= 0) return Rational(0);
  const std::size_t need = static_cast<std::size_t>(-v);
  if (prec < need)
    throw PrecisionExhausted("residue at e needs precision " + std::to_string(need) + ", got " +
                             std::to_string(prec));
  LaurentSeries prod = cache.expansion().expand(f, need) * cache.dt_series(need);
  return prod.coefficient(-1);
}

Rational residue_along(const CycCache& cache, const MeromorphicDifferential& w, long s) {
  if (s < 1) throw ValidationError("order class must be >= 1");
  if (s == 1) return residue_at_e(cache, w);
  const FuncElt& f = w.coefficient;
  if (f.is_zero() || f.d().degree() == 0) return Rational(0);
  auto poles = supported_poles(cache, f.d());
  if (!poles.count(s) || f.v().is_zero()) return Rational(0);
  // Dt = -lambda dx/(2y). The u/(2yd) dx part is odd under P -> -P and drops
  // out of the orbit sum (at 2-torsion P = -P forces it to vanish). The rest
  // is the sum of residues of v/d dx over the roots of P_s: the factor 2 from
  // the two points over a root, or from ramification at 2-torsion, cancels 1/2.
  Poly p = cache.torsion_poly(s);
  Poly rest = f.d();
  Poly ds = Poly::constant(Rational(1));
  for (Poly g = exact::poly_gcd(rest, p); g.degree() > 0; g = exact::poly_gcd(rest, p)) {
    ds = ds * g;
    rest = rest / g;
  }
  Poly a = (f.v() * exact::inverse_mod(rest, ds)) % ds;
  Rational sum = a.coeff(static_cast<std::size_t>(ds.degree() - 1)) / ds.lead();
  return -cache.lambda() * sum;
}

}  // namespace ellt::curve
