#include "ellt/curve/cyclotomic.hpp"

#include "ellt/errors.hpp"

namespace ellt::curve {

using exact::is_zero;

Coordinate Coordinate::standard(const WeierstrassCurve& c, const Rational& scale) {
  // x/y = x y / (x^3 + a x + b).
  return Coordinate(FuncElt(Poly{}, Poly::x(), c.rhs()), scale, 12, true);
}

Coordinate::Coordinate(FuncElt base, Rational scale, long validated_to, bool standard)
    : base_(std::move(base)), scale_(std::move(scale)), validated_to_(validated_to), standard_(standard) {
  if (is_zero(scale_)) throw ValidationError("coordinate scale must be nonzero");
  if (base_.is_zero() || ord_e(base_) != 1) throw ValidationError("coordinate must vanish to order exactly 1 at e");
  if (validated_to_ < 1) throw ValidationError("coordinate validation bound must be >= 1");
}

CycCache::CycCache(WeierstrassCurve curve, Coordinate coordinate, long pole_bound)
    : expansion_(std::move(curve)),
      coordinate_(std::move(coordinate)),
      t_e_(coordinate_.function()),
      lambda_(lead_at_e(t_e_)),
      pole_bound_(pole_bound) {
  if (pole_bound_ < 2) throw ValidationError("pole bound must be >= 2");
  // Zeros and poles of t_e off e sit over roots of (u^2 - v^2 f) d.
  Poly norm = t_e_.u() * t_e_.u() - t_e_.v() * t_e_.v() * this->curve().rhs();
  Poly support = norm * t_e_.d();
  coordinate_verified_ = torsion_factorization(support, coordinate_.validated_to()).has_value();
}

FuncElt CycCache::psi_locked(long n) const {
  if (n < 0) throw ValidationError("division polynomial index must be >= 0");
  if (auto it = psi_.find(n); it != psi_.end()) return it->second;
  const WeierstrassCurve& c = curve();
  const Rational& a = c.a();
  const Rational& b = c.b();
  FuncElt r;
  switch (n) {
    case 0:
      r = FuncElt{};
      break;
    case 1:
      r = FuncElt::constant(Rational(1));
      break;
    case 2:
      r = FuncElt::y().scaled(Rational(2));
      break;
    case 3:
      r = FuncElt::from_x(Poly{-a * a, 12 * b, 6 * a, Rational(0), Rational(3)});
      break;
    case 4: {
      Poly p{-8 * b * b - a * a * a, -4 * a * b, -5 * a * a, 20 * b, 5 * a, Rational(0), Rational(1)};
      r = FuncElt(Poly{}, 4 * p, Poly::constant(Rational(1)));
      break;
    }
    default: {
      long m = n / 2;
      if (n % 2 == 1) {
        FuncElt l = mul(c, psi_locked(m + 2), pow(c, psi_locked(m), 3));
        FuncElt rr = mul(c, psi_locked(m - 1), pow(c, psi_locked(m + 1), 3));
        r = sub(l, rr);
      } else {
        FuncElt l = mul(c, psi_locked(m + 2), pow(c, psi_locked(m - 1), 2));
        FuncElt rr = mul(c, psi_locked(m - 2), pow(c, psi_locked(m + 1), 2));
        FuncElt half = div(c, psi_locked(m), FuncElt::y().scaled(Rational(2)));
        r = mul(c, half, sub(l, rr));
      }
    }
  }
  if (n >= 1 && ord_e(r) != -(n * n - 1))
    throw ValidationError("division polynomial " + std::to_string(n) + " has the wrong pole order at e");
  psi_.emplace(n, r);
  return r;
}

FuncElt CycCache::division_psi(long n) const {
  if (n < 1) throw ValidationError("division polynomial index must be >= 1");
  std::lock_guard lock(mu_);
  return psi_locked(n);
}

void CycCache::preload_psi(long n, const FuncElt& psi) const {
  if (n < 1 || psi.is_zero() || ord_e(psi) != -(n * n - 1))
    throw ValidationError("stored division polynomial " + std::to_string(n) + " fails the pole-order check");
  std::lock_guard lock(mu_);
  psi_.emplace(n, psi);
}

std::map<long, FuncElt> CycCache::psi_snapshot() const {
  std::lock_guard lock(mu_);
  std::map<long, FuncElt> out = psi_;
  out.erase(0);
  return out;
}

FuncElt CycCache::primitive_locked(long s) const {
  if (auto it = primitive_.find(s); it != primitive_.end()) return it->second;
  const WeierstrassCurve& c = curve();
  FuncElt den = FuncElt::constant(Rational(1));
  for (long r = 2; r < s; ++r)
    if (s % r == 0) den = mul(c, den, primitive_locked(r));
  FuncElt p = div(c, psi_locked(s), den);
  if (!p.is_polynomial())
    throw ValidationError("primitive factor " + std::to_string(s) + " is not regular away from e");
  primitive_.emplace(s, p);
  return p;
}

FuncElt CycCache::primitive_factor(long s) const {
  if (s < 2) throw ValidationError("primitive factors are defined for s >= 2");
  std::lock_guard lock(mu_);
  return primitive_locked(s);
}

Poly CycCache::torsion_poly(long s) const {
  if (s < 2) throw ValidationError("torsion polynomials are defined for s >= 2");
  std::lock_guard lock(mu_);
  if (auto it = torsion_poly_.find(s); it != torsion_poly_.end()) return it->second;
  Poly p;
  if (s == 2) {
    p = curve().rhs();
  } else {
    FuncElt f = primitive_locked(s);
    if (!f.v().is_zero()) throw ValidationError("odd-order primitive factor depends on y");
    p = f.u().monic();
  }
  torsion_poly_.emplace(s, p);
  return p;
}

void CycCache::build_t_locked(long s) const {
  if (t_.count(s)) return;
  const WeierstrassCurve& c = curve();
  const long n = exact_order_count(s);
  FuncElt raw = primitive_locked(s);
  auto fail = [s](const std::string& why) {
    throw ValidationError("t_" + std::to_string(s) + " fails validation: " + why);
  };
  if (ord_e(raw) != -n) fail("pole order at e is not |A<s>|");
  if (s == 2) {
    if (!raw.u().is_zero() || raw.v().degree() != 0) fail("not a multiple of y");
  } else {
    if (!raw.v().is_zero() || !raw.is_polynomial()) fail("not a polynomial in x");
    Poly p = raw.u().monic();
    if (2 * p.degree() != n) fail("degree mismatch");
    if (!exact::is_squarefree(p)) fail("vanishes to order > 1");
    if (exact::poly_gcd(p, c.rhs()).degree() > 0) fail("vanishes on A<2>");
    for (long r = 3; r < s; ++r)
      if (exact::poly_gcd(p, torsion_poly(r)).degree() > 0) fail("vanishes on A<" + std::to_string(r) + ">");
  }
  Rational scalar = 1 / (exact::pow(lambda_, n) * lead_at_e(raw));
  FuncElt t = raw.scaled(scalar);
  // t_e^n t_s is 1 at e, compared through the series.
  LaurentSeries check = pow(expansion_.expand(t_e_, 1), n) * expansion_.expand(t, 1);
  if (check.valuation() != 0 || check.lead() != 1) fail("normalization at e");
  scalar_.emplace(s, scalar);
  t_.emplace(s, t);
}

FuncElt CycCache::cyclotomic_t(long s) const {
  if (s < 2) throw ValidationError("cyclotomic functions are defined for s >= 2");
  std::lock_guard lock(mu_);
  build_t_locked(s);
  return t_.at(s);
}

Rational CycCache::normalizer(long s) const {
  if (s < 2) throw ValidationError("cyclotomic functions are defined for s >= 2");
  std::lock_guard lock(mu_);
  build_t_locked(s);
  return scalar_.at(s);
}

FuncElt CycCache::t_star(const TorsionDivisor& d) const {
  const WeierstrassCurve& c = curve();
  FuncElt num = FuncElt::constant(Rational(1));
  FuncElt den = FuncElt::constant(Rational(1));
  for (auto [s, n] : d.coeffs()) {
    if (s == 1) continue;
    FuncElt t = cyclotomic_t(s);
    if (n > 0)
      num = mul(c, num, pow(c, t, n));
    else
      den = mul(c, den, pow(c, t, -n));
  }
  return div(c, num, den);
}

std::optional<std::map<long, unsigned>> CycCache::torsion_factorization(const Poly& p, long bound) const {
  if (p.is_zero()) throw ValidationError("torsion factorization of zero");
  std::map<long, unsigned> out;
  Poly r = p.monic();
  for (long s = 2; s <= bound && r.degree() > 0; ++s) {
    Poly ps = torsion_poly(s);
    unsigned k = 0;
    for (Poly g = exact::poly_gcd(r, ps); g.degree() > 0; g = exact::poly_gcd(r, ps)) {
      r = r / g;
      ++k;
    }
    if (k) out[s] = k;
  }
  if (r.degree() > 0) return std::nullopt;
  return out;
}

LaurentSeries CycCache::t_series(long s, std::size_t prec) const {
  if (s < 1) throw ValidationError("order class must be >= 1");
  std::lock_guard lock(mu_);
  auto it = series_.find(s);
  if (it != series_.end() && it->second.precision() >= prec) return it->second.truncated(prec);
  if (s > 1) build_t_locked(s);
  const FuncElt& f = s == 1 ? t_e_ : t_.at(s);
  LaurentSeries ser = expansion_.expand(f, prec);
  series_[s] = ser;
  return ser;
}

LaurentSeries CycCache::dt_series(std::size_t prec) const { return expansion_.half_dx_over_y(prec) * (-lambda_); }

namespace {

using Coeffs = std::vector<Rational>;

// Product truncated to n coefficients.
Coeffs mul_trunc(const Coeffs& a, const Coeffs& b, std::size_t n) {
  Coeffs r(n);
  Rational t;
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      t = a[i] * b[j];
      r[i + j] += t;
    }
  }
  return r;
}

// sum_j p_j r^j truncated to n coefficients; r has zero constant term.
Coeffs compose(const Coeffs& p, const Coeffs& r, std::size_t n) {
  Coeffs acc(n);
  for (std::size_t j = p.size(); j-- > 0;) {
    acc = mul_trunc(acc, r, n);
    if (n) acc[0] += p[j];
  }
  return acc;
}

}  // namespace

LaurentSeries CycCache::reversion(std::size_t prec) const {
  // Called with mu_ held. Solves T(R(s)) = s one coefficient per sweep.
  if (reversion_.precision() >= prec) return reversion_.truncated(prec);
  const std::size_t n = prec + 1;
  LaurentSeries te = expansion_.expand(t_e_, n);
  Coeffs tau(n + 1);
  for (std::size_t j = 1; j <= n; ++j) tau[j] = te.coefficient(static_cast<long>(j));
  const Rational& t1 = tau[1];
  Coeffs r(n + 1);
  r[1] = 1 / t1;
  for (std::size_t sweep = 1; sweep < n; ++sweep) {
    Coeffs tr = compose(tau, r, n + 1);
    tr[1] -= 1;
    for (std::size_t k = 1; k <= n; ++k) r[k] -= tr[k] / t1;
  }
  reversion_ = LaurentSeries(1, Coeffs(r.begin() + 1, r.begin() + static_cast<long>(prec) + 1));
  return reversion_;
}

LaurentSeries CycCache::in_coordinate(const LaurentSeries& f) const {
  if (f.is_zero()) return f;
  if (coordinate_.is_standard()) {
    std::vector<Rational> c = f.coeffs();
    Rational inv = 1 / lambda_;
    Rational scale = exact::pow(inv, f.valuation());
    for (auto& x : c) {
      x *= scale;
      scale *= inv;
    }
    return LaurentSeries(f.valuation(), std::move(c));
  }
  std::lock_guard lock(mu_);
  const std::size_t p = f.precision();
  LaurentSeries r = reversion(p);
  // f = t^v h(t) with h a unit; f(R) = R^v h(R) and R = s V(s).
  LaurentSeries v_unit = r.shifted(-1);
  Coeffs rc(p + 1);
  for (std::size_t k = 1; k <= p; ++k) rc[k] = r.coefficient(static_cast<long>(k));
  Coeffs h = compose(f.coeffs(), rc, p);
  LaurentSeries hr(0, std::move(h));
  return (pow(v_unit, f.valuation()) * hr).shifted(f.valuation());
}

}  // namespace ellt::curve
