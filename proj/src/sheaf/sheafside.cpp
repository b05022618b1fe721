#include "ellt/sheaf/sheafside.hpp"

#include <algorithm>

#include "ellt/errors.hpp"

namespace ellt::sheaf {

using exact::Matrix;
using exact::Rational;
using exact::Vector;
using tmodel::AlmostConstant;
using tmodel::Caps;

TorsionDivisor section_divisor(const TorsionDivisor& d, const OpenSet& open, long cap) {
  if (cap < 0) throw ValidationError("section cap must be >= 0");
  TorsionDivisor out = d;
  for (long s : open.pi) {
    if (s < 1) throw ValidationError("orders in pi must be >= 1");
    out += TorsionDivisor::point(s, cap);
  }
  return out;
}

SectionWindow sections(const CycCache& cache, const TorsionDivisor& d, const OpenSet& open, long cap) {
  SectionWindow w;
  w.open = open;
  w.divisor = d;
  w.cap = cap;
  w.basis = curve::rr_basis(cache, section_divisor(d, open, cap));
  return w;
}

ModuleWindow ma_eval(const ASObject& object, const OpenSet& open, long cap) {
  const auto* backend = dynamic_cast<const ea::EllipticBackend*>(&object.backend());
  if (!backend) throw ValidationError("M_A evaluation needs an object on the elliptic backend");
  if (!object.rigid_even()) throw ValidationError("M_A evaluation is only modelled on rigid even objects");
  const AlmostConstant w;
  const TorsionDivisor lower = object.lower(w);
  ModuleWindow out;
  out.window = section_divisor(lower, open, cap);

  // Slack of one on every kept class, and enough to reach degree 1.
  Caps caps;
  caps.bound = out.window;
  caps.step = TorsionDivisor();
  std::set<long> kept = {1};
  for (auto& [s, n] : out.window.coeffs()) kept.insert(s);
  for (long s : open.pi) kept.erase(s);
  long slack_class = 1;
  while (open.pi.count(slack_class)) ++slack_class;
  kept.insert(slack_class);
  for (long s : kept) {
    caps.bound += TorsionDivisor::point(s, 1);
    caps.step += TorsionDivisor::point(s, 1);
  }
  const long deg = caps.bound.degree();
  if (deg < 1) caps.bound += TorsionDivisor::point(slack_class, 1 - deg);

  const bool certified = caps.bound.geq(out.window) && caps.bound.degree() >= 1;
  bool first = true;
  out.stable = tmodel::stabilize(
      [&](const Caps& c) {
        const bool vec = first;
        first = false;
        return object.evaluate(w, c, vec, open.pi);
      },
      caps, certified);
  for (const Vector& v : out.stable.first.kernel) out.basis.push_back(backend->element(out.stable.caps, v));
  return out;
}

ASObject sa_build(const EATheory& theory, const TorsionDivisor& d) {
  return ASObject(theory.backend_ptr(), [d](const AlmostConstant& w) { return d + w.window_divisor(); });
}

namespace {

Matrix coordinate_matrix(const CycCache& cache, const std::vector<FuncElt>& basis, const TorsionDivisor& big) {
  const std::size_t n = static_cast<std::size_t>(curve::h_dims(big).first);
  std::vector<Vector> cols;
  for (const FuncElt& f : basis) {
    auto v = curve::rr_coordinates(cache, f, big);
    if (!v) throw Error("restriction leaves the ambient section window");
    cols.push_back(*v);
  }
  return Matrix::from_columns(cols, n);
}

}  // namespace

bool glue_check(const CycCache& cache, const TorsionDivisor& d, const std::set<long>& pi,
                const std::set<long>& pi2, long cap) {
  std::set<long> both, either;
  std::set_intersection(pi.begin(), pi.end(), pi2.begin(), pi2.end(), std::inserter(both, both.end()));
  std::set_union(pi.begin(), pi.end(), pi2.begin(), pi2.end(), std::inserter(either, either.end()));
  const TorsionDivisor big = section_divisor(d, {either}, cap);
  const SectionWindow s1 = sections(cache, d, {pi}, cap);
  const SectionWindow s2 = sections(cache, d, {pi2}, cap);
  const SectionWindow s12 = sections(cache, d, {both}, cap);

  const Matrix f = coordinate_matrix(cache, s1.basis, big);
  const Matrix g = coordinate_matrix(cache, s2.basis, big);
  const std::size_t n1 = s1.basis.size(), n2 = s2.basis.size();
  Matrix diff(f.rows(), n1 + n2);
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < n1; ++c) diff(r, c) = f(r, c);
    for (std::size_t c = 0; c < n2; ++c) diff(r, n1 + c) = -g(r, c);
  }
  const std::size_t kernel_dim = n1 + n2 - exact::rank(diff);

  // Restriction diagonal h -> (h|U_pi, h|U_pi').
  const TorsionDivisor d1 = section_divisor(d, {pi}, cap), d2 = section_divisor(d, {pi2}, cap);
  std::vector<Vector> diag;
  for (const FuncElt& h : s12.basis) {
    auto a = curve::rr_coordinates(cache, h, d1);
    auto b = curve::rr_coordinates(cache, h, d2);
    if (!a || !b) return false;
    Vector col = *a;
    col.insert(col.end(), b->begin(), b->end());
    if (diff.apply(col) != Vector(diff.rows())) return false;
    diag.push_back(col);
  }
  const std::size_t diag_rank = diag.empty() ? 0 : exact::rank(Matrix::from_columns(diag, n1 + n2));
  return diag_rank == s12.basis.size() && diag_rank == kernel_dim;
}

bool roundtrip(const EATheory& theory, const Representation& v, const std::vector<OpenSet>& opens,
               const std::vector<long>& caps) {
  const CycCache& cache = theory.cyc();
  const TorsionDivisor d = ea::rep_to_divisor(v);
  const ASObject obj = sa_build(theory, d);
  for (const OpenSet& u : opens)
    for (long cap : caps) {
      const ModuleWindow m = ma_eval(obj, u, cap);
      const SectionWindow s = sections(cache, d, u, cap);
      if (m.basis.size() != s.basis.size()) return false;
      const TorsionDivisor dd = section_divisor(d, u, cap);
      for (const FuncElt& f : m.basis)
        if (!curve::membership(cache, f, dd)) return false;
    }
  Representation bare = v;
  bare.fixed_part = 0;
  const ASObject susp = tmodel::suspend(theory.as_object(), tmodel::dim_fn(bare));
  for (const AlmostConstant& w : {AlmostConstant(), tmodel::dim_fn(Representation::z(1)),
                                  tmodel::dim_fn(-Representation::z(2))}) {
    const Caps base = theory.backend().default_caps(obj.lower(w));
    Caps wide = base;
    for (auto& [s, n] : base.bound.coeffs()) wide.bound += TorsionDivisor::point(s, 1);
    if (!tmodel::window_equal(obj, susp, w, {base, base.plus(1), wide})) return false;
  }
  return true;
}

nlohmann::ordered_json sections_report(const SectionWindow& s) {
  nlohmann::ordered_json pi = nlohmann::ordered_json::array();
  for (long p : s.open.pi) pi.push_back(p);
  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (const FuncElt& f : s.basis) basis.push_back(curve::to_string(f));
  return {{"D", tmodel::to_json(s.divisor)},
          {"pi", pi},
          {"cap", s.cap},
          {"dim", s.basis.size()},
          {"basis", basis}};
}

}  // namespace ellt::sheaf
