#include <filesystem>
#include <random>

#include "doctest.h"
#include "ellt/curve/psi_store.hpp"
#include "ellt/curve/riemann_roch.hpp"
#include "ellt/errors.hpp"
#include "numeric_oracle.hpp"

using namespace ellt;
using namespace ellt::curve;
using exact::Poly;
using exact::Rational;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

const WeierstrassCurve& E1() {
  static const WeierstrassCurve c(Rational(-1), Rational(0));
  return c;
}
const WeierstrassCurve& E2() {
  static const WeierstrassCurve c(Rational(0), Rational(1));
  return c;
}

const CycCache& cache1() {
  static const CycCache c(E1(), Coordinate::standard(E1()));
  return c;
}
const CycCache& cache2() {
  static const CycCache c(E2(), Coordinate::standard(E2()));
  return c;
}

FuncElt X() { return FuncElt::x(); }
FuncElt Y() { return FuncElt::y(); }
FuncElt one() { return FuncElt::constant(Rational(1)); }

TorsionDivisor random_divisor(std::mt19937& rng, long max_class, long lo, long hi) {
  std::uniform_int_distribution<long> c(lo, hi);
  TorsionDivisor d;
  for (long s = 1; s <= max_class; ++s) d.set(s, c(rng));
  return d;
}

// A function with poles spread over e and several torsion classes.
FuncElt random_function(const CycCache& cache, std::mt19937& rng) {
  TorsionDivisor d = random_divisor(rng, 4, 0, 2);
  if (d.degree() < 1) d.set(1, 2);
  auto basis = rr_basis(cache, d);
  std::uniform_int_distribution<int> c(-3, 3);
  FuncElt f;
  for (const auto& b : basis) f = add(f, b.scaled(Rational(c(rng))));
  if (f.is_zero()) f = basis.back();
  return f;
}

}  // namespace

TEST_CASE("curve validation") {
  CHECK_THROWS_AS(WeierstrassCurve(Rational(0), Rational(0)), ValidationError);
  CHECK_THROWS_AS(WeierstrassCurve(Rational(-3), Rational(2)), ValidationError);
  CHECK(E1().discriminant() == 64);
  CHECK(E1().key() == "-1,0");
}

TEST_CASE("ff_arith examples") {
  const auto& c = E1();
  FuncElt t = div(c, X(), Y());
  CHECK(mul(c, t, Y()) == X());
  CHECK(mul(c, Y(), Y()) == FuncElt::from_x(c.rhs()));
  FuncElt iy = ff_arith(c, FieldOp::inv, Y());
  CHECK(iy == FuncElt(Poly{}, P({1}), c.rhs()));
  CHECK(mul(c, iy, Y()) == one());
  CHECK_THROWS_AS(inv(c, FuncElt{}), DivisionByZero);
  CHECK(to_string(iy) == "([0]; [1]; [0, -1, 0, 1])");
  CHECK(parse_funcelt(to_string(iy)) == iy);
  CHECK_THROWS_AS(parse_funcelt("([1]; [0])"), ValidationError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(3);
  const auto& c = E2();
  for (int i = 0; i < 20; ++i) {
    FuncElt f = random_function(cache2(), rng), g = random_function(cache2(), rng), h = random_function(cache2(), rng);
    CHECK(mul(c, f, inv(c, f)) == one());
    CHECK(mul(c, f, add(g, h)) == add(mul(c, f, g), mul(c, f, h)));
    CHECK(mul(c, mul(c, f, g), h) == mul(c, f, mul(c, g, h)));
    if (!add(f, g).is_zero()) CHECK(ord_e(mul(c, f, g)) == ord_e(f) + ord_e(g));
  }
}

TEST_CASE("expand_at_e examples and curve equation") {
  for (const auto* c : {&E1(), &E2()}) {
    LocalExpansion ex(*c);
    LaurentSeries t = ex.expand(div(*c, X(), Y()), 12);
    CHECK(t.valuation() == 1);
    CHECK(t.coefficient(1) == 1);
    for (long i = 2; i < 13; ++i) CHECK(t.coefficient(i) == 0);
    LaurentSeries x = ex.expand(X(), 12), y = ex.expand(Y(), 12);
    CHECK(x.valuation() == -2);
    CHECK(x.lead() == 1);
    CHECK(y.valuation() == -3);
    CHECK(y.lead() == 1);
    // y^2 - x^3 - a x - b vanishes to the retained precision.
    LaurentSeries rel = y * y - x * x * x - x * c->a() - LaurentSeries::monomial(c->b(), 0, 20);
    CHECK(rel.is_zero());
    CHECK(rel.absolute_precision() >= 5);
    CHECK(expand_at_e(*c, X(), 3) == x.truncated(3));
  }
}

TEST_CASE("ord_e examples and consistency with expansion") {
  CHECK(ord_e(X()) == -2);
  CHECK(ord_e(Y()) == -3);
  CHECK(ord_e(div(E1(), X(), Y())) == 1);
  CHECK_THROWS_AS(ord_e(FuncElt{}), DivisionByZero);
  std::mt19937 rng(8);
  for (int i = 0; i < 15; ++i) {
    FuncElt f = random_function(cache1(), rng);
    LaurentSeries s = cache1().expansion().expand(f, 4);
    CHECK(s.valuation() == ord_e(f));
    CHECK(s.lead() == lead_at_e(f));
  }
}

TEST_CASE("exact_order_count") {
  CHECK(exact_order_count(1) == 1);
  CHECK(exact_order_count(2) == 3);
  CHECK(exact_order_count(3) == 8);
  CHECK(exact_order_count(4) == 12);
  for (long n = 1; n <= 40; ++n) {
    long total = 0;
    for (long s = 1; s <= n; ++s)
      if (n % s == 0) total += exact_order_count(s);
    CHECK(total == n * n);
  }
  CHECK_THROWS_AS(exact_order_count(0), ValidationError);
}

TEST_CASE("division_psi closed forms and pole orders") {
  for (const auto* cc : {&cache1(), &cache2()}) {
    const auto& a = cc->curve().a();
    const auto& b = cc->curve().b();
    CHECK(cc->division_psi(1) == one());
    CHECK(cc->division_psi(2) == Y().scaled(Rational(2)));
    CHECK(cc->division_psi(3) == FuncElt::from_x(Poly{-a * a, 12 * b, 6 * a, Rational(0), Rational(3)}));
    for (long n = 1; n <= 8; ++n) CHECK(ord_e(cc->division_psi(n)) == -(n * n - 1));
  }
  CHECK(exact::to_string(cache1().division_psi(3).u()) == "[-1, 0, -6, 0, 3]");
}

TEST_CASE("psi_n vanishes on numeric n-torsion") {
  // Roots of the x-part of psi_n give points of order dividing n under the group law.
  for (const auto* cc : {&cache1(), &cache2()}) {
    long double a = static_cast<long double>(cc->curve().a().get_d());
    long double b = static_cast<long double>(cc->curve().b().get_d());
    for (long n = 3; n <= 7; ++n) {
      FuncElt psi = cc->division_psi(n);
      Poly xpart = n % 2 ? psi.u() : psi.v();
      for (auto x0 : oracle::roots(xpart)) {
        oracle::C y0 = std::sqrt(x0 * x0 * x0 + a * x0 + b);
        auto ord = oracle::order({x0, y0}, a, n);
        REQUIRE(ord);
        CHECK(n % *ord == 0);
      }
    }
  }
}

TEST_CASE("cyclotomic_t on E1") {
  CHECK(cache1().cyclotomic_t(2) == Y());
  CHECK(cache1().cyclotomic_t(3) == FuncElt::from_x(P({-1, 0, -6, 0, 3})).scaled(Rational(1, 3)));
  CHECK_THROWS_AS(cache1().cyclotomic_t(1), ValidationError);
}

TEST_CASE("cyclotomic_t: divisor, normalization and exact order of zeros") {
  for (const auto* cc : {&cache1(), &cache2()}) {
    long double a = static_cast<long double>(cc->curve().a().get_d());
    long double b = static_cast<long double>(cc->curve().b().get_d());
    for (long s = 2; s <= 6; ++s) {
      FuncElt t = cc->cyclotomic_t(s);
      long n = exact_order_count(s);
      CHECK(ord_e(t) == -n);
      LaurentSeries norm = pow(cc->t_series(1, 3), n) * cc->t_series(s, 3);
      CHECK(norm.valuation() == 0);
      CHECK(norm.lead() == 1);
      CHECK(ord_along(*cc, t, s) == 1);
      for (long r = 2; r <= 6; ++r)
        if (r != s) CHECK(ord_along(*cc, t, r) == 0);
      for (auto x0 : oracle::roots(cc->torsion_poly(s))) {
        oracle::C y0 = std::sqrt(x0 * x0 * x0 + a * x0 + b);
        auto ord = oracle::order({x0, y0}, a, s);
        REQUIRE(ord);
        CHECK(*ord == s);
      }
    }
  }
}

TEST_CASE("cyclotomic_t under rescaling and perturbation of the coordinate") {
  for (long lam : {2L, -3L}) {
    CycCache scaled(E1(), Coordinate::standard(E1(), Rational(lam)));
    for (long s = 2; s <= 3; ++s) {
      long n = exact_order_count(s);
      // Normalization t_e^n t_s = 1 at e forces the factor lambda^-n.
      CHECK(scaled.cyclotomic_t(s) == cache1().cyclotomic_t(s).scaled(exact::pow(Rational(lam), -n)));
    }
  }
  // t_e + t_e^2 has the same image in I/I^2.
  FuncElt t = div(E2(), X(), Y());
  Coordinate perturbed(add(t, mul(E2(), t, t)), Rational(1), 6);
  CycCache pc(E2(), perturbed);
  CHECK_FALSE(pc.coordinate().is_standard());
  for (long s = 2; s <= 3; ++s) CHECK(pc.cyclotomic_t(s) == cache2().cyclotomic_t(s));
}

TEST_CASE("coordinate validation") {
  CHECK(cache1().coordinate_verified());
  CHECK(cache2().coordinate_verified());
  // x/y on y^2 = x^3 + x + 3 vanishes at (0, +-sqrt 3); not recognized as torsion of small order.
  WeierstrassCurve c(Rational(1), Rational(3));
  CycCache cc(c, Coordinate::standard(c));
  CHECK_FALSE(cc.coordinate_verified());
  CHECK_THROWS_AS(Coordinate(X(), Rational(1), 4), ValidationError);
  CHECK_THROWS_AS(Coordinate::standard(E1(), Rational(0)), ValidationError);
}

TEST_CASE("division polynomial factorization into t_s") {
  for (const auto* cc : {&cache1(), &cache2()}) {
    for (long n = 2; n <= 6; ++n) {
      FuncElt prod = one();
      for (long s = 2; s <= n; ++s)
        if (n % s == 0) prod = mul(cc->curve(), prod, cc->cyclotomic_t(s));
      FuncElt psi = cc->division_psi(n);
      Rational scalar = lead_at_e(psi) / lead_at_e(prod);
      CHECK(psi == prod.scaled(scalar));
    }
  }
}

TEST_CASE("t_star examples and multiplicativity") {
  CHECK(cache1().t_star(TorsionDivisor{}) == one());
  CHECK(cache1().t_star(TorsionDivisor::point(2)) == Y());
  CHECK(cache1().t_star(TorsionDivisor::identity()) == one());
  std::mt19937 rng(11);
  for (int i = 0; i < 12; ++i) {
    TorsionDivisor d = random_divisor(rng, 4, -2, 2), e = random_divisor(rng, 4, -2, 2);
    const auto& cc = cache2();
    CHECK(mul(cc.curve(), cc.t_star(d), cc.t_star(e)) == cc.t_star(d + e));
    FuncElt ts = cc.t_star(d);
    long expected = 0;
    for (auto [s, n] : d.coeffs())
      if (s >= 2) expected -= n * exact_order_count(s);
    CHECK(ord_e(ts) == expected);
    for (long s = 2; s <= 4; ++s) CHECK(ord_along(cc, ts, s) == d[s]);
  }
}

TEST_CASE("h_dims") {
  CHECK(h_dims(TorsionDivisor::identity(3)) == std::pair<long, long>{3, 0});
  CHECK(h_dims(TorsionDivisor::identity(-2)) == std::pair<long, long>{0, 2});
  TorsionDivisor d = TorsionDivisor::point(2) - TorsionDivisor::identity(3);
  CHECK(d.degree() == 0);
  CHECK(h_dims(d) == std::pair<long, long>{1, 1});
  // Witness: t_2 spans H^0(O(A<2> - 3e)).
  CHECK(membership(cache1(), inv(E1(), cache1().cyclotomic_t(2)), d));
  std::mt19937 rng(2);
  for (int i = 0; i < 30; ++i) {
    TorsionDivisor r = random_divisor(rng, 6, -2, 2);
    auto [h0, h1] = h_dims(r);
    CHECK(h0 - h1 == r.degree());
  }
}

TEST_CASE("rr_basis examples") {
  CHECK(rr_basis(cache1(), TorsionDivisor::identity()) == std::vector<FuncElt>{one()});
  CHECK(rr_basis(cache1(), TorsionDivisor{}) == std::vector<FuncElt>{one()});
  const auto& c = E1();
  FuncElt iy = inv(c, Y());
  std::vector<FuncElt> expected{iy, mul(c, X(), iy), one(), mul(c, FuncElt::from_x(P({0, 0, 1})), iy)};
  CHECK(rr_basis(cache1(), TorsionDivisor::full_torsion(2)) == expected);
  CHECK(rr_basis(cache1(), TorsionDivisor::identity(-1)).empty());
}

TEST_CASE("rr_basis: size, membership and independence") {
  std::mt19937 rng(4);
  for (const auto* cc : {&cache1(), &cache2()}) {
    for (int i = 0; i < 12; ++i) {
      TorsionDivisor d = random_divisor(rng, 4, -1, 2);
      auto basis = rr_basis(*cc, d);
      CHECK(static_cast<long>(basis.size()) == h_dims(d).first);
      std::vector<exact::Vector> cols;
      for (const auto& f : basis) {
        auto co = rr_coordinates(*cc, f, d);
        REQUIRE(co);
        cols.push_back(*co);
      }
      if (!basis.empty()) CHECK(exact::rank(exact::Matrix::from_columns(cols, basis.size())) == basis.size());
    }
  }
}

TEST_CASE("membership examples") {
  CHECK(membership(cache1(), one(), TorsionDivisor{}));
  CHECK_FALSE(membership(cache1(), X(), TorsionDivisor{}));
  CHECK(membership(cache1(), inv(E1(), Y()), TorsionDivisor::point(2)));
  CHECK_FALSE(membership(cache1(), inv(E1(), Y()), TorsionDivisor{}));
  CHECK(membership(cache1(), FuncElt{}, TorsionDivisor::identity(-3)));
  FuncElt bad = inv(E1(), FuncElt::from_x(P({-5, 1})));
  CHECK_THROWS_AS(membership(cache1(), bad, TorsionDivisor::identity(4)), UnsupportedPoles);
}

TEST_CASE("ord_along examples") {
  const auto& cc = cache1();
  FuncElt t2 = cc.cyclotomic_t(2);
  CHECK(ord_along(cc, t2, 2) == 1);
  CHECK(ord_along(cc, inv(E1(), t2), 2) == -1);
  // x vanishes to order 2 at (0,0) and not at (+-1, 0).
  CHECK(ord_along(cc, X(), 2) == 0);
  CHECK(ord_along(cc, X(), 1) == -2);
  CHECK(ord_along(cc, inv(E1(), X()), 2) == -2);
}

TEST_CASE("ord_along additivity on products of t_r and pole monomials") {
  std::mt19937 rng(6);
  const auto& cc = cache2();
  for (int i = 0; i < 10; ++i) {
    TorsionDivisor d = random_divisor(rng, 4, -2, 2), e = random_divisor(rng, 4, -2, 2);
    FuncElt f = mul(cc.curve(), cc.t_star(d), pole_monomial(i % 4));
    FuncElt g = cc.t_star(e);
    for (long s = 1; s <= 4; ++s)
      CHECK(ord_along(cc, mul(cc.curve(), f, g), s) == ord_along(cc, f, s) + ord_along(cc, g, s));
  }
}

TEST_CASE("principal_part examples") {
  const auto& cc = cache1();
  FuncElt t2 = cc.cyclotomic_t(2);
  CHECK(principal_part(cc, X(), 2, 1) == exact::Vector(3));
  auto pp = principal_part(cc, inv(E1(), t2), 2, 1);
  CHECK(pp.size() == 3);
  CHECK(std::any_of(pp.begin(), pp.end(), [](const Rational& q) { return q != 0; }));
  CHECK_THROWS_AS(principal_part(cc, inv(E1(), mul(E1(), t2, t2)), 2, 1), DepthExceeded);
  // Regular summands do not change the class; deeper windows have the advertised size.
  FuncElt f = add(inv(E1(), t2), X());
  CHECK(principal_part(cc, f, 2, 1) == pp);
  CHECK(principal_part(cc, inv(E1(), mul(E1(), t2, t2)), 2, 2).size() == 6);
  CHECK(principal_part(cc, inv(E1(), cc.cyclotomic_t(3)), 3, 2).size() == 16);
  // At e: x = t_e^-2 + ..., so the depth-2 part is (1, 0).
  CHECK(principal_part(cc, X(), 1, 2) == exact::Vector{1, 0});
}

TEST_CASE("local quotient kernel is the depth ideal") {
  // f is in the ideal iff its class vanishes: t_s^k itself has zero class at depth k.
  const auto& cc = cache2();
  for (long s = 2; s <= 4; ++s)
    for (long k = 1; k <= 3; ++k) {
      LocalQuotient q(cc, s, k);
      CHECK(static_cast<long>(q.dim()) == k * exact_order_count(s));
      FuncElt tk = pow(cc.curve(), cc.cyclotomic_t(s), k);
      auto v = q.coordinates(tk);
      CHECK(std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }));
      FuncElt tk1 = pow(cc.curve(), cc.cyclotomic_t(s), k - 1);
      auto w = q.coordinates(tk1);
      CHECK(std::any_of(w.begin(), w.end(), [](const Rational& x) { return x != 0; }));
      CHECK(q.coordinates(q.representative(w)) == w);
    }
}

TEST_CASE("residue examples") {
  for (long lam : {1L, 2L}) {
    CycCache cc(E1(), Coordinate::standard(E1(), Rational(lam)));
    CHECK(residue_at_e(cc, {inv(E1(), cc.t_e())}) == 1);
    CHECK(residue_at_e(cc, {one()}) == 0);
    CHECK(residue_at_e(cc, {X()}) == 0);
    CHECK_THROWS_AS(residue_at_e(cc, {inv(E1(), cc.t_e())}, 0), PrecisionExhausted);
    CHECK(residue_along(cc, {X()}, 2) == 0);
    FuncElt f = inv(E1(), cc.cyclotomic_t(2));
    CHECK(residue_along(cc, {f}, 2) == -residue_at_e(cc, {f}));
  }
}

TEST_CASE("residue theorem on random differentials") {
  std::mt19937 rng(12);
  for (const auto* cc : {&cache1(), &cache2()}) {
    for (int i = 0; i < 15; ++i) {
      FuncElt f = random_function(*cc, rng);
      MeromorphicDifferential w{f};
      Rational total = residue_at_e(*cc, w);
      for (long s = 2; s <= 4; ++s) total += residue_along(*cc, w, s);
      CHECK(total == 0);
    }
  }
}

TEST_CASE("division polynomial store round trip") {
  auto path = std::filesystem::temp_directory_path() / "ellt_test_psi.json";
  std::filesystem::remove(path);
  CHECK(PsiStore::load(path).dump() == "{}\n");
  PsiStore store;
  cache1().division_psi(6);
  store.absorb(cache1());
  store.save(path);
  PsiStore back = PsiStore::load(path);
  CHECK(back.dump() == store.dump());
  CycCache fresh(E1(), Coordinate::standard(E1()));
  CHECK(back.preload(fresh) >= 6);
  CHECK(fresh.division_psi(5) == cache1().division_psi(5));
  std::filesystem::remove(path);
}
