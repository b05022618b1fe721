#include "ellt/ea/eatheory.hpp"

#include <algorithm>

#include "ellt/errors.hpp"

namespace ellt::ea {

using curve::LocalQuotient;
using exact::LaurentSeries;
using exact::Poly;

namespace {

const Poly kOne = Poly::constant(Rational(1));

// Pole order of the k-th e-pole monomial, split as x^j or x^j y.
struct MonomialShape {
  long j;
  bool has_y;
};

MonomialShape shape(std::size_t k) {
  if (k == 0) return {0, false};
  const long p = static_cast<long>(k) + 1;
  if (p % 2 == 0) return {p / 2, false};
  return {(p - 3) / 2, true};
}

// q^e mod m, e of either sign.
Poly signed_pow_mod(const Poly& q, long e, const Poly& m) {
  if (e >= 0) return exact::pow_mod(q, static_cast<unsigned long>(e), m);
  return exact::pow_mod(exact::inverse_mod(q % m, m), static_cast<unsigned long>(-e), m);
}

long floor_div2(long m) { return m >= 0 ? m / 2 : -((-m + 1) / 2); }

}  // namespace

std::size_t EllipticBackend::window_dim(const Caps& caps) const {
  return static_cast<std::size_t>(curve::h_dims(caps.bound).first);
}

Matrix EllipticBackend::block(const Caps& caps, long s, long lower) const {
  if (s < 1) throw ValidationError("order class must be >= 1");
  return s == 1 ? block_at_e(caps, lower) : block_along(caps, s, lower);
}

Matrix EllipticBackend::block_at_e(const Caps& caps, long lower) const {
  const long top = caps.bound[1];
  const long k = top - lower;
  const std::size_t cols = window_dim(caps);
  if (k <= 0) return Matrix(0, cols);
  const std::size_t rows = static_cast<std::size_t>(k);
  Matrix out(rows, cols);
  if (cols == 0) return out;
  const std::size_t prec = rows;
  const CycCache& c = *cache_;
  LaurentSeries inv_t = LaurentSeries::one(prec);
  for (auto [b, n] : caps.bound.coeffs())
    if (b >= 2) inv_t = (inv_t * exact::pow(c.t_series(b, prec), -n)).truncated(prec);
  const LaurentSeries xs = c.expansion().expand(FuncElt::x(), prec);
  const LaurentSeries ys = c.expansion().expand(FuncElt::y(), prec);
  std::vector<LaurentSeries> xpow{LaurentSeries::one(prec)};
  for (std::size_t i = 0; i < cols; ++i) {
    const MonomialShape m = shape(i);
    while (static_cast<long>(xpow.size()) <= m.j) xpow.push_back((xpow.back() * xs).truncated(prec));
    LaurentSeries f = xpow[static_cast<std::size_t>(m.j)];
    if (m.has_y) f = (f * ys).truncated(prec);
    const LaurentSeries g = c.in_coordinate((f * inv_t).truncated(prec));
    for (std::size_t r = 0; r < rows; ++r) out(r, i) = g.coefficient(-top + static_cast<long>(r));
  }
  return out;
}

Matrix EllipticBackend::block_along(const Caps& caps, long s, long lower) const {
  const long top = caps.bound[s];
  const long k = top - lower;
  const std::size_t cols = window_dim(caps);
  if (k <= 0) return Matrix(0, cols);
  const CycCache& c = *cache_;
  const LocalQuotient q(c, s, k);
  const Poly m = exact::pow(c.torsion_poly(s), static_cast<unsigned>(k));
  const Poly& rhs = c.curve().rhs();

  // h = t_s^top / t*(E) = 1 / prod_{b != s} t_b^{E_b}, as R(x) y^eps mod m.
  Poly r = kOne % m;
  long y_exp = 0;
  Rational scalar(1);
  for (auto [b, n] : caps.bound.coeffs()) {
    if (b < 2 || b == s) continue;
    const FuncElt tb = c.cyclotomic_t(b);
    if (b == 2) {
      // t_2 = c y.
      y_exp -= n;
      scalar *= exact::pow(tb.v().coeff(0), -n);
      continue;
    }
    if (!tb.v().is_zero() || tb.d().degree() != 0) throw Error("t_" + std::to_string(b) + " is not a polynomial in x");
    r = (r * signed_pow_mod(tb.u(), -n, m)) % m;
  }
  r = (r * signed_pow_mod(rhs, floor_div2(y_exp), m)) % m;
  r = r * scalar;
  const bool eps = (y_exp - 2 * floor_div2(y_exp)) == 1;
  const Poly hu = eps ? Poly() : r;
  const Poly hv = eps ? r : Poly();
  const Poly rhs_m = rhs % m;

  Matrix out(q.dim(), cols);
  std::vector<Poly> xu{hu}, xv{hv};  // x^j h
  for (std::size_t i = 0; i < cols; ++i) {
    const MonomialShape sh = shape(i);
    while (static_cast<long>(xu.size()) <= sh.j) {
      xu.push_back(xu.back().shifted(1) % m);
      xv.push_back(xv.back().shifted(1) % m);
    }
    const Poly& a = xu[static_cast<std::size_t>(sh.j)];
    const Poly& b = xv[static_cast<std::size_t>(sh.j)];
    Vector col = sh.has_y ? q.coordinates((b * rhs_m) % m, a) : q.coordinates(a, b);
    for (std::size_t row = 0; row < col.size(); ++row) out(row, i) = col[row];
  }
  return out;
}

bool EllipticBackend::certifies(const Caps& caps, const TorsionDivisor& lower) const {
  for (auto [s, n] : caps.step.coeffs())
    if (n < 0) return false;
  return caps.bound.geq(lower) && caps.bound.degree() >= 1;
}

Caps EllipticBackend::default_caps(const TorsionDivisor& lower) const {
  Caps c;
  c.bound = lower + TorsionDivisor::identity(std::max(1L, 1 - lower.degree()));
  c.step = TorsionDivisor::identity();
  return c;
}

FuncElt EllipticBackend::element(const Caps& caps, const Vector& coords) const {
  const std::size_t n = window_dim(caps);
  if (coords.size() != n) throw ValidationError("window coordinates have the wrong length");
  const WeierstrassCurve& cv = cache_->curve();
  Poly u, v;
  for (std::size_t i = 0; i < n; ++i) {
    if (exact::is_zero(coords[i])) continue;
    const MonomialShape sh = shape(i);
    Poly mono = Poly::monomial(coords[i], static_cast<std::size_t>(sh.j));
    if (sh.has_y)
      v += mono;
    else
      u += mono;
  }
  FuncElt num(u, v, kOne);
  if (num.is_zero()) return num;
  return curve::div(cv, num, cache_->t_star(caps.bound));
}

std::string EllipticBackend::element_text(const Caps& caps, const Vector& coords) const {
  return curve::to_string(element(caps, coords));
}

namespace {

tmodel::ASObject make_object(std::shared_ptr<const EllipticBackend> backend) {
  return tmodel::ASObject(std::move(backend), [](const AlmostConstant& w) { return w.window_divisor(); });
}

}  // namespace

EATheory::EATheory(std::shared_ptr<CycCache> cache)
    : cache_(std::move(cache)),
      backend_(std::make_shared<EllipticBackend>(cache_)),
      object_(make_object(backend_)) {
  // With one extra pole at e the window surjects onto each torsion window.
  for (long s = 2; s <= 4; ++s)
    for (long k = 1; k <= 2; ++k) {
      Caps caps{TorsionDivisor::point(s, k) + TorsionDivisor::identity()};
      Matrix b = backend_->block(caps, s, 0);
      if (exact::rank(b) != b.rows())
        throw Error("structure map is not surjective onto the depth-" + std::to_string(k) + " window along A<" +
                    std::to_string(s) + ">");
    }
}

EATheory build_ea(const WeierstrassCurve& curve, const Coordinate& coordinate) {
  return EATheory(std::make_shared<CycCache>(curve, coordinate));
}

TorsionDivisor rep_to_divisor(const Representation& w) {
  TorsionDivisor d;
  for (auto [n, a] : w.multiplicities) d += TorsionDivisor::full_torsion(n, a);
  return d;
}

namespace {

SphereHomology evaluate_sphere(const EATheory& t, const AlmostConstant& w, const std::optional<Caps>& caps,
                               bool want_basis) {
  const tmodel::ASObject& obj = t.as_object();
  SphereHomology h;
  h.divisor = obj.lower(w);
  h.weight = obj.weight(w);
  h.stable = tmodel::stabilize(obj, w, caps, want_basis);
  h.h0_dim = h.stable.hom_dim;
  h.h1_dim = h.stable.ext_dim;
  if (!want_basis) return h;
  for (const Vector& v : h.stable.first.kernel)
    h.h0_basis.push_back({h.weight, t.backend().element(h.stable.caps, v)});
  for (std::size_t row : h.stable.first.cokernel) {
    for (const auto& b : h.stable.first.blocks) {
      if (row < b.first_row || row >= b.first_row + b.rows) continue;
      Vector vec(b.rows);
      vec[row - b.first_row] = 1;
      h.h1_reps.push_back({b.s, h.weight, vec, b.lower, b.top});
    }
  }
  return h;
}

}  // namespace

SphereHomology sphere_homology(const EATheory& t, const Representation& w, const std::optional<Caps>& caps,
                               bool want_basis) {
  const AlmostConstant dim = tmodel::dim_fn(w);
  SphereHomology h = evaluate_sphere(t, dim, caps, want_basis);
  if (!(h.divisor == rep_to_divisor(w))) throw Error("window divisor disagrees with the divisor of W");
  return h;
}

SphereHomology divisor_homology(const EATheory& t, const TorsionDivisor& d, const std::optional<Caps>& caps,
                                bool want_basis) {
  return evaluate_sphere(t, AlmostConstant(0, d.coeffs()), caps, want_basis);
}

SphereCohomology sphere_cohomology(const EATheory& t, const Representation& w, const std::optional<Caps>& caps) {
  SphereCohomology c;
  c.dual = sphere_homology(t, -w, caps);
  c.e0_dim = c.dual.h0_dim;
  c.e1_dim = c.dual.h1_dim;
  return c;
}

std::vector<CoefficientRow> coefficient_ring(const EATheory& t, long lo, long hi) {
  if (lo > hi) throw ValidationError("empty degree range");
  const tmodel::ASObject& obj = t.as_object();
  std::vector<CoefficientRow> rows;
  for (long d = lo; d <= hi; ++d) {
    const bool odd = (d % 2) != 0;
    const long n = odd ? (d + 1) / 2 : d / 2;
    const AlmostConstant w = AlmostConstant::constant(-n);
    tmodel::StableResult r = tmodel::stabilize(obj, w, std::nullopt, false);
    CoefficientRow row;
    row.degree = d;
    row.weight = obj.weight(w);
    row.dim = odd ? r.ext_dim : r.hom_dim;
    const std::string un = n == 0 ? "" : (n == 1 ? "u" : "u^" + std::to_string(n));
    row.witness = odd ? (n == 0 ? "tau" : "tau " + un) : (n == 0 ? "1" : un);
    const AlmostConstant shifted = w + AlmostConstant::constant(-1);
    tmodel::QWindow a = obj.q_window(w, r.caps), b = obj.q_window(shifted, r.caps);
    row.periodic = a.matrix == b.matrix;
    rows.push_back(row);
  }
  return rows;
}

ProductCheck product_check(const EATheory& t, const Representation& w1, const Representation& w2,
                           std::size_t sample_count) {
  const CycCache& c = t.cyc();
  SphereHomology h1 = sphere_homology(t, w1), h2 = sphere_homology(t, w2);
  const TorsionDivisor d = h1.divisor + h2.divisor;
  ProductCheck res;
  res.ok = curve::mul(c.curve(), c.t_star(h1.divisor), c.t_star(h2.divisor)) == c.t_star(d);
  for (const GradedFn& f : h1.h0_basis)
    for (const GradedFn& g : h2.h0_basis) {
      if (sample_count != 0 && res.pairs >= sample_count) return res;
      const FuncElt p = curve::mul(c.curve(), f.f, g.f);
      res.ok = res.ok && curve::membership(c, p, d) && f.weight + g.weight == h1.weight + h2.weight;
      ++res.pairs;
    }
  return res;
}

namespace {

Rational pair_at_e(const CycCache& c, const FuncElt& f, const TorsionClass& cls) {
  if (f.is_zero()) return Rational(0);
  std::size_t prec = static_cast<std::size_t>(8 + std::abs(curve::ord_e(f)) + std::abs(cls.top) + std::abs(cls.lower));
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    try {
      const LaurentSeries fs = c.expansion().expand(f, prec);
      const LaurentSeries te = c.t_series(1, prec);
      LaurentSeries h = LaurentSeries::zero(static_cast<long>(prec));
      for (std::size_t r = 0; r < cls.vector.size(); ++r)
        if (!exact::is_zero(cls.vector[r])) h = h + exact::pow(te, -cls.top + static_cast<long>(r)) * cls.vector[r];
      return (fs * h * c.dt_series(prec)).coefficient(-1);
    } catch (const PrecisionExhausted&) {
    }
  }
  throw PrecisionExhausted("residue pairing at e did not converge");
}

Rational pair_along(const CycCache& c, const FuncElt& f, const TorsionClass& cls) {
  const WeierstrassCurve& cv = c.curve();
  const LocalQuotient q(c, cls.s, cls.top - cls.lower);
  const FuncElt g = q.representative(cls.vector);
  const FuncElt h = curve::div(cv, g, curve::pow(cv, c.cyclotomic_t(cls.s), cls.top));
  return curve::residue_along(c, {curve::mul(cv, f, h)}, cls.s);
}

}  // namespace

SerrePairing serre_pairing(const EATheory& t, const TorsionDivisor& d, const std::optional<Caps>& caps) {
  if (d.degree() < 1) throw ValidationError("Serre pairing needs deg D >= 1");
  const CycCache& c = t.cyc();
  SerrePairing p;
  p.basis = curve::rr_basis(c, d);
  SphereHomology neg = divisor_homology(t, -d, caps, true);
  p.classes = neg.h1_reps;
  p.matrix = Matrix(p.basis.size(), p.classes.size());
  for (std::size_t i = 0; i < p.basis.size(); ++i)
    for (std::size_t j = 0; j < p.classes.size(); ++j)
      p.matrix(i, j) = p.classes[j].s == 1 ? pair_at_e(c, p.basis[i], p.classes[j])
                                           : pair_along(c, p.basis[i], p.classes[j]);
  p.rank = exact::rank(p.matrix);
  return p;
}

CompletionModule completion(const EATheory& t, long k) {
  if (k < 1) throw ValidationError("completion depth must be >= 1");
  const CycCache& c = t.cyc();
  const std::size_t n = static_cast<std::size_t>(k);
  const LaurentSeries te = c.t_series(1, n + 1);
  auto coords = [&](long i) {
    const LaurentSeries s = c.in_coordinate(exact::pow(te, i));
    Vector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = s.coefficient(static_cast<long>(r));
    return v;
  };
  CompletionModule m;
  m.k = k;
  for (long i = 0; i < k; ++i) m.images.push_back(coords(i));
  const Matrix basis = Matrix::from_columns(m.images, n);
  m.dim = static_cast<long>(exact::rank(basis));
  m.action = Matrix(n, n);
  for (long i = 0; i < k; ++i) {
    const Vector img = coords(i + 1);
    auto x = exact::solve(basis, img);
    if (!x) throw Error("t_e multiple outside the span of the completion basis");
    for (std::size_t r = 0; r < n; ++r) m.action(r, static_cast<std::size_t>(i)) = (*x)[r];
  }
  return m;
}

LocalCohomology local_cohomology(const EATheory& t, const std::set<long>& pi, long a) {
  if (a < 1) throw ValidationError("local cohomology cap must be >= 1");
  LocalCohomology lc;
  lc.pi = pi;
  lc.a = a;
  std::set<long> classes;
  for (long n : pi) {
    if (n < 1) throw ValidationError("orders in pi must be >= 1");
    for (long s = 1; s <= n; ++s)
      if (n % s == 0) classes.insert(s);
  }
  if (classes.empty()) return lc;
  Caps caps;
  for (long s : classes) {
    caps.bound.set(s, a);
    lc.expected += a * curve::exact_order_count(s);
  }
  tmodel::WindowEval ev = t.as_object().evaluate(AlmostConstant(), caps);
  lc.dim = static_cast<long>(ev.rows);
  lc.kernel = ev.hom_dim;
  lc.cokernel = ev.ext_dim;
  for (const auto& b : ev.blocks) lc.per_class[b.s] = static_cast<long>(b.rows);
  return lc;
}

VertexWindow localization_vertex(const EATheory& t, long weight, const TorsionDivisor& cap) {
  VertexWindow v;
  v.weight = weight;
  v.cap = cap;
  for (FuncElt& f : curve::rr_basis(t.cyc(), cap)) v.basis.push_back({weight, std::move(f)});
  return v;
}

Matrix vertex_inclusion(const EATheory& t, const TorsionDivisor& sub, const TorsionDivisor& cap) {
  if (!cap.geq(sub)) throw ValidationError("inclusion needs sub <= cap");
  const std::vector<FuncElt> small = curve::rr_basis(t.cyc(), sub);
  const std::size_t n = static_cast<std::size_t>(curve::h_dims(cap).first);
  std::vector<Vector> cols;
  for (const FuncElt& f : small) {
    auto v = curve::rr_coordinates(t.cyc(), f, cap);
    if (!v) throw Error("rr_basis element outside the larger window");
    cols.push_back(*v);
  }
  return Matrix::from_columns(cols, n);
}

nlohmann::ordered_json curve_json(const EATheory& t) {
  return {{"a", exact::to_string(t.curve().a())}, {"b", exact::to_string(t.curve().b())}};
}

nlohmann::ordered_json sphere_report(const EATheory& t, const Representation& w, const SphereHomology& h) {
  const Coordinate& co = t.coordinate();
  nlohmann::ordered_json wj = nlohmann::ordered_json::object();
  for (auto [n, a] : w.multiplicities) wj[std::to_string(n)] = a;
  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (const GradedFn& g : h.h0_basis) basis.push_back(curve::to_string(g.f));
  return {{"curve", curve_json(t)},
          {"coordinate",
           {{"form", co.is_standard() ? std::string("x/y") : curve::to_string(co.base())},
            {"scale", exact::to_string(co.scale())}}},
          {"W", wj},
          {"fixed_part", w.fixed_part},
          {"weight", h.weight},
          {"h0", h.h0_dim},
          {"h1", h.h1_dim},
          {"h0_basis", basis},
          {"certified_caps", tmodel::to_json(h.stable.caps)}};
}

}  // namespace ellt::ea
