#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ellt/curve/riemann_roch.hpp"
#include "ellt/tmodel/asobject.hpp"

namespace ellt::ea {

using curve::Coordinate;
using curve::CycCache;
using curve::FuncElt;
using curve::WeierstrassCurve;
using exact::Matrix;
using exact::Rational;
using exact::Vector;
using tmodel::AlmostConstant;
using tmodel::Caps;
using tmodel::Representation;
using tmodel::TorsionDivisor;

// Vertex windows H^0(O(E)) in the rr_basis ordering, principal parts along
// A<s> through LocalQuotient and along e in the t_e-Laurent tail.
class EllipticBackend : public tmodel::GroupBackend {
 public:
  explicit EllipticBackend(std::shared_ptr<const CycCache> cache) : cache_(std::move(cache)) {}
  const CycCache& cache() const { return *cache_; }
  std::string name() const override { return "elliptic " + cache_->curve().key(); }
  long class_size(long s) const override { return curve::exact_order_count(s); }
  std::size_t window_dim(const Caps& caps) const override;
  Matrix block(const Caps& caps, long s, long lower) const override;
  // E >= lower pointwise and deg E >= 1, so that H^1(O(E)) = 0.
  bool certifies(const Caps& caps, const TorsionDivisor& lower) const override;
  // lower + max(1, 1 - deg lower) (e), stepping along (e).
  Caps default_caps(const TorsionDivisor& lower) const override;
  std::string element_text(const Caps& caps, const Vector& coords) const override;
  FuncElt element(const Caps& caps, const Vector& coords) const;

 private:
  Matrix block_at_e(const Caps& caps, long lower) const;
  Matrix block_along(const Caps& caps, long s, long lower) const;
  std::shared_ptr<const CycCache> cache_;
};

// The elliptic theory: the rigid even object whose Hom(S^0, Sigma^w -) is
// H^0 of O(D_w) and whose Ext is H^1.
class EATheory {
 public:
  explicit EATheory(std::shared_ptr<CycCache> cache);
  const WeierstrassCurve& curve() const { return cache_->curve(); }
  const Coordinate& coordinate() const { return cache_->coordinate(); }
  const CycCache& cyc() const { return *cache_; }
  std::shared_ptr<CycCache> cyc_ptr() const { return cache_; }
  const EllipticBackend& backend() const { return *backend_; }
  std::shared_ptr<const EllipticBackend> backend_ptr() const { return backend_; }
  const tmodel::ASObject& as_object() const { return object_; }

 private:
  std::shared_ptr<CycCache> cache_;
  std::shared_ptr<const EllipticBackend> backend_;
  tmodel::ASObject object_;
};

EATheory build_ea(const WeierstrassCurve& curve, const Coordinate& coordinate);

// f Dt^n.
struct GradedFn {
  long weight = 0;
  FuncElt f;
};

// A principal-part class along s of pole orders in (lower, top].
struct TorsionClass {
  long s = 1;
  long weight = 0;
  Vector vector;
  long lower = 0;
  long top = 0;
};

TorsionDivisor rep_to_divisor(const Representation& w);

struct SphereHomology {
  TorsionDivisor divisor;
  long weight = 0;
  std::vector<GradedFn> h0_basis;  // empty unless requested
  std::size_t h0_dim = 0;
  std::size_t h1_dim = 0;
  std::vector<TorsionClass> h1_reps;
  tmodel::StableResult stable;
};

SphereHomology sphere_homology(const EATheory& t, const Representation& w, const std::optional<Caps>& caps = {},
                               bool want_basis = true);
// Same evaluation for an arbitrary window divisor in weight 0.
SphereHomology divisor_homology(const EATheory& t, const TorsionDivisor& d, const std::optional<Caps>& caps = {},
                                bool want_basis = true);

// E^0 and E^1 of S^W, read from the homology of S^{-W}.
struct SphereCohomology {
  std::size_t e0_dim = 0;
  std::size_t e1_dim = 0;
  SphereHomology dual;
};
SphereCohomology sphere_cohomology(const EATheory& t, const Representation& w, const std::optional<Caps>& caps = {});

struct CoefficientRow {
  long degree = 0;
  long weight = 0;
  std::size_t dim = 0;
  std::string witness;       // "1", "u^n", "tau", "tau u^n"
  bool periodic = false;     // windows at w and w - epsilon coincide
};
std::vector<CoefficientRow> coefficient_ring(const EATheory& t, long lo, long hi);

struct ProductCheck {
  bool ok = false;
  std::size_t pairs = 0;
};
ProductCheck product_check(const EATheory& t, const Representation& w1, const Representation& w2,
                           std::size_t sample_count);

struct SerrePairing {
  Matrix matrix;  // rows: rr_basis(D); columns: cokernel classes for -D
  std::size_t rank = 0;
  std::vector<FuncElt> basis;
  std::vector<TorsionClass> classes;
};
// Requires deg D >= 1.
SerrePairing serre_pairing(const EATheory& t, const TorsionDivisor& d, const std::optional<Caps>& caps = {});

struct CompletionModule {
  long k = 0;
  long dim = 0;
  Matrix action;               // t_e acting on O_e / I^k in the basis 1, t_e, ..., t_e^{k-1}
  std::vector<Vector> images;  // coordinates of t_e^i, i < k
};
CompletionModule completion(const EATheory& t, long k);

struct LocalCohomology {
  std::set<long> pi;
  long a = 0;
  long dim = 0;         // rows of the principal-part window
  long expected = 0;    // a |A[pi]|
  long degree = -1;
  std::size_t kernel = 0;
  std::size_t cokernel = 0;
  std::map<long, long> per_class;
};
LocalCohomology local_cohomology(const EATheory& t, const std::set<long>& pi, long a);

struct VertexWindow {
  long weight = 0;
  TorsionDivisor cap;
  std::vector<GradedFn> basis;
};
VertexWindow localization_vertex(const EATheory& t, long weight, const TorsionDivisor& cap);
// Columns: coordinates of rr_basis(sub) in rr_basis(cap); requires sub <= cap.
Matrix vertex_inclusion(const EATheory& t, const TorsionDivisor& sub, const TorsionDivisor& cap);

nlohmann::ordered_json curve_json(const EATheory& t);
nlohmann::ordered_json sphere_report(const EATheory& t, const Representation& w, const SphereHomology& h);

}  // namespace ellt::ea
