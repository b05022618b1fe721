#include <random>

#include "doctest.h"
#include "ellt/affine/affine.hpp"
#include "ellt/errors.hpp"

using namespace ellt;
using namespace ellt::tmodel;
using namespace ellt::affine;
using exact::Poly;
using exact::Rational;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

std::shared_ptr<const AffineGroupData> gm() {
  static auto g = std::make_shared<const AffineGroupData>(AffineKind::multiplicative);
  return g;
}
std::shared_ptr<const AffineGroupData> ga() {
  static auto g = std::make_shared<const AffineGroupData>(AffineKind::additive);
  return g;
}

Representation rep(std::map<long, long> m, long fixed = 0) {
  Representation r;
  for (auto [n, a] : m)
    if (a != 0) r.multiplicities[n] = a;
  r.fixed_part = fixed;
  return r;
}

// All W with support in 1..nmax and sum |a_n| <= budget.
std::vector<Representation> all_reps(long nmax, long budget) {
  std::vector<Representation> out;
  std::function<void(long, long, Representation)> go = [&](long n, long left, Representation r) {
    if (n > nmax) {
      out.push_back(r);
      return;
    }
    for (long a = -left; a <= left; ++a) {
      Representation next = r;
      if (a != 0) next.multiplicities[n] = a;
      go(n + 1, left - std::abs(a), next);
    }
  };
  go(1, budget, Representation{});
  return out;
}

}  // namespace

TEST_CASE("dim_fn examples") {
  CHECK(dim_fn(Representation::z(1)) == AlmostConstant::indicator(1));
  CHECK(dim_fn(Representation::z(2)) == AlmostConstant(0, {{1, 1}, {2, 1}}));
  AlmostConstant w = dim_fn(rep({{1, 1}, {3, 2}}));
  CHECK(w(1) == 3);
  CHECK(w(3) == 2);
  CHECK(w(2) == 0);
  CHECK(w.tail() == 0);
  AlmostConstant t = dim_fn(rep({{2, 1}}, 3));
  CHECK(t.tail() == 3);
  CHECK(t(2) == 4);
  CHECK(t(5) == 3);
  CHECK(t.window_divisor() == curve::TorsionDivisor::full_torsion(2));
}

TEST_CASE("almost constant arithmetic") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> v(-3, 3), s(1, 6);
  auto random_w = [&]() {
    std::map<long, long> m;
    for (int i = 0; i < 3; ++i) m[s(rng)] = v(rng);
    return AlmostConstant(v(rng), m);
  };
  for (int i = 0; i < 50; ++i) {
    AlmostConstant a = random_w(), b = random_w(), c = random_w();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK(a - a == AlmostConstant());
    CHECK((a + b).geq(a) == b.geq(AlmostConstant()));
    for (long k = 1; k <= 8; ++k) CHECK((a + b)(k) == a(k) + b(k));
    const AlmostConstant sum = a + b;
    for (auto [k, x] : sum.deviations()) CHECK(x != sum.tail());
  }
  CHECK(dim_fn(rep({{2, 1}}) + rep({{3, -1}})) == dim_fn(rep({{2, 1}})) + dim_fn(rep({{3, -1}})));
}

TEST_CASE("Euler class symbols multiply by adding exponents") {
  EulerClassSymbol c2 = EulerClassSymbol::cyclotomic(2), c3 = EulerClassSymbol::cyclotomic(3);
  CHECK((c2 * c3).exponent() == AlmostConstant(0, {{2, 1}, {3, 1}}));
  CHECK((c2 * c3) * c2 == c2 * (c3 * c2));
  CHECK_THROWS_AS(EulerClassSymbol(AlmostConstant(1)), ValidationError);
  CHECK_THROWS_AS(EulerClassSymbol(AlmostConstant::indicator(2, -1)), ValidationError);
}

TEST_CASE("representation text") {
  CHECK(to_string(Representation{}) == "0");
  CHECK(to_string(rep({{1, 1}, {3, 2}})) == "z+2z^3");
  CHECK(to_string(rep({{2, -1}}, 1)) == "-z^2+e");
}

TEST_CASE("affine euler_class and phi examples") {
  CHECK(euler_class(*gm(), 2) == LaurentFn::poly(P({1, 0, -1})));
  CHECK(euler_class(*ga(), 3) == LaurentFn::poly(P({0, 3})));
  CHECK(euler_class(*gm(), Representation{}) == LaurentFn());
  CHECK(phi(*gm(), 1) == LaurentFn::poly(P({1, -1})));
  CHECK(phi(*gm(), 2) == LaurentFn::poly(P({1, 1})));
  CHECK(phi(*ga(), 2) == LaurentFn::poly(P({2})));
  CHECK(phi(*gm(), 6) == LaurentFn::poly(P({1, -1, 1})));
  CHECK(phi(*gm(), 12) == LaurentFn::poly(P({1, 0, -1, 0, 1})));
  CHECK(to_string(euler_class(*gm(), 2)) == "[1, 0, -1] / [1]");
}

TEST_CASE("cyclotomic product recursion for n <= 12") {
  for (long n = 1; n <= 12; ++n) {
    Poly acc = P({1});
    for (long s = 1; s <= n; ++s)
      if (n % s == 0) acc = acc * gm()->phi(s);
    CHECK(acc == P({1}) - Poly::monomial(Rational(1), static_cast<std::size_t>(n)));
    Poly add = P({1});
    for (long s = 1; s <= n; ++s)
      if (n % s == 0) add = add * ga()->phi(s);
    CHECK(add == Poly::monomial(Rational(n), 1));
  }
  for (long s = 2; s <= 12; ++s) CHECK(ga()->phi(s).degree() == 0);
}

TEST_CASE("affine sphere module generators") {
  CHECK(affine_sphere_module(*gm(), rep({{1, 1}})).generator == LaurentFn::poly(P({1, -1})));
  CHECK(affine_sphere_module(*gm(), rep({{2, 2}})).generator == LaurentFn::poly(pow(P({1, 0, -1}), 2)));
  CHECK(affine_sphere_module(*ga(), rep({{1, 1}})).generator == LaurentFn::poly(P({0, 1})));
  CHECK(affine_sphere_module(*gm(), rep({{1, 1}})).rank == 1);
  CHECK_THROWS_AS(affine_sphere_module(*gm(), rep({}, 1)), ValidationError);
}

TEST_CASE("generic pipeline on G_m: no odd groups, generator chi(W)^-+1") {
  for (const Representation& w : all_reps(4, 3))
    for (int sign : {1, -1}) {
      AffineSphereResult r = affine_sphere_pipeline(gm(), w, sign);
      CAPTURE(to_string(w));
      CAPTURE(sign);
      CHECK(r.h1 == 0);
      CHECK(r.generator_ok);
      CHECK(r.stable.certified);
    }
}

TEST_CASE("generic pipeline on G_a: only class 1 contributes") {
  for (const Representation& w : all_reps(4, 3))
    for (int sign : {1, -1}) {
      AffineSphereResult r = affine_sphere_pipeline(ga(), w, sign);
      CAPTURE(to_string(w));
      CHECK(r.h1 == 0);
      CHECK(r.generator_ok);
      for (const auto& b : r.stable.first.blocks) CHECK(b.s == 1);
    }
}

TEST_CASE("G_m degree-0 window is a Laurent truncation") {
  ASObject m = affine_object(gm());
  StableResult r = hom_from_sphere(m, AlmostConstant());
  // D = 0: kernel in window span 0 is the constants only.
  CHECK(r.hom_dim == 1);
  Caps wide = r.caps;
  wide.span = 3;
  WindowEval ev = m.evaluate(AlmostConstant(), wide, true);
  CHECK(ev.hom_dim == 7);
  const auto& backend = static_cast<const AffineBackend&>(m.backend());
  for (const auto& v : ev.kernel) {
    LaurentFn f = backend.element(wide, v);
    CHECK(f.den() == Poly::monomial(Rational(1), static_cast<std::size_t>(f.den().degree())));
  }
}

TEST_CASE("suspension is additive window for window") {
  ASObject m = affine_object(gm());
  std::vector<AlmostConstant> ws = {AlmostConstant(), dim_fn(rep({{1, 1}})), dim_fn(rep({{2, -1}, {3, 1}})),
                                    dim_fn(rep({{4, 2}}, 1))};
  for (const auto& a : ws)
    for (const auto& b : ws) {
      for (const auto& w : ws) {
        Caps base = m.backend().default_caps(m.lower(w + a + b));
        std::vector<Caps> caps = {base, base.plus(1)};
        CHECK(window_equal(suspend(suspend(m, a), b), suspend(m, a + b), w, caps));
        CHECK(window_equal(suspend(m, AlmostConstant()), m, w, caps));
      }
    }
}

TEST_CASE("stabilize: zero object and undersized caps") {
  StableResult z = stabilize(ASObject::zero(), AlmostConstant(), std::nullopt);
  CHECK(z.hom_dim == 0);
  CHECK(z.ext_dim == 0);
  CHECK(z.certified);
  ASObject m = affine_object(gm());
  AlmostConstant w = dim_fn(rep({{2, 3}}));
  Caps small;
  small.bound = curve::TorsionDivisor::point(1, 3) + curve::TorsionDivisor::point(2, 1);
  CHECK_THROWS_AS(stabilize(m, w, small), CapTooSmall);
  // A drifting evaluation is never reported as stable.
  CHECK_THROWS_AS(stabilize([](const Caps& c) { WindowEval e; e.hom_dim = static_cast<std::size_t>(c.bound[1]); return e; },
                            Caps{curve::TorsionDivisor::identity(1)}, true),
                  CapTooSmall);
}

TEST_CASE("window report json") {
  ASObject m = affine_object(gm());
  AlmostConstant w = dim_fn(rep({{1, 1}}));
  auto j = window_report(w, hom_from_sphere(m, w));
  CHECK(j["w"]["tail"] == 0);
  CHECK(j["w"]["dev"]["1"] == 1);
  CHECK(j["hom_dim"] == 2);
  CHECK(j["ext_dim"] == 0);
  CHECK(j["certified"] == true);
}
