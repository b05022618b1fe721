#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>

#include "ellt/tmodel/almost_constant.hpp"
#include "ellt/tmodel/backend.hpp"
#include "json.hpp"

namespace ellt::tmodel {

struct BlockRows {
  long s;
  long lower;  // pole orders in (lower, top] are recorded
  long top;
  std::size_t first_row;
  std::size_t rows;
};

struct QWindow {
  Matrix matrix;  // stacked principal-part blocks; columns are the vertex window basis
  std::vector<BlockRows> blocks;
};

struct WindowEval {
  std::size_t window_dim = 0;
  std::size_t rows = 0;
  std::size_t hom_dim = 0;
  std::size_t ext_dim = 0;
  std::vector<Vector> kernel;          // filled on request
  std::vector<std::size_t> cokernel;   // rows completing the image, on request
  std::vector<BlockRows> blocks;
};

// A rigid even object N -> t_F (x) V, held as window evaluators. For a query
// w the structure map is q on Hom(S^0, Sigma^w M): the vertex window of
// functions capped by Caps, and along each class s the principal parts of
// poles beyond lower(w)[s].
class ASObject {
 public:
  // lower bounds of the torsion windows for Sigma^{w} of the base object.
  using LowerFn = std::function<TorsionDivisor(const AlmostConstant&)>;

  ASObject(std::shared_ptr<const GroupBackend> backend, LowerFn lower, bool rigid_even = true);
  static ASObject zero();

  bool is_zero() const { return backend_ == nullptr; }
  const GroupBackend& backend() const;
  std::shared_ptr<const GroupBackend> backend_ptr() const { return backend_; }
  bool rigid_even() const { return rigid_even_; }
  const AlmostConstant& offset() const { return offset_; }

  TorsionDivisor lower(const AlmostConstant& w) const;
  // Internal weight of Hom(S^0, Sigma^w M): the negated trivial multiplicity.
  long weight(const AlmostConstant& w) const { return -(w + offset_).tail(); }

  std::size_t vertex_dim(const Caps& caps) const;
  std::size_t torsion_dim(long s, long depth) const;
  // Rows of dropped classes are omitted: poles there are unconstrained up to caps.
  QWindow q_window(const AlmostConstant& w, const Caps& caps, const std::set<long>& dropped = {}) const;
  WindowEval evaluate(const AlmostConstant& w, const Caps& caps, bool want_vectors = false,
                      const std::set<long>& dropped = {}) const;

  ASObject suspend(const AlmostConstant& w) const;

 private:
  ASObject() = default;
  std::shared_ptr<const GroupBackend> backend_;
  LowerFn lower_;
  AlmostConstant offset_;
  bool rigid_even_ = true;
};

inline ASObject suspend(const ASObject& m, const AlmostConstant& w) { return m.suspend(w); }

struct StableResult {
  std::size_t hom_dim = 0;
  std::size_t ext_dim = 0;
  Caps caps;  // witness: the first caps of the stable run
  bool certified = false;
  WindowEval first;
};

// Evaluates at caps, caps+1, caps+2. Throws CapTooSmall unless certified and
// all three agree.
StableResult stabilize(const std::function<WindowEval(const Caps&)>& eval, const Caps& caps, bool certified);

// Default caps come from the backend when none are given.
StableResult stabilize(const ASObject& m, const AlmostConstant& w, const std::optional<Caps>& caps,
                       bool want_vectors = false);

// Kernel vectors of the stabilized q in window coordinates.
StableResult hom_from_sphere(const ASObject& m, const AlmostConstant& w, const std::optional<Caps>& caps = {});
std::size_t ext_window(const ASObject& m, const AlmostConstant& w, const std::optional<Caps>& caps = {});

// Same matrices and blocks for every sampled caps.
bool window_equal(const ASObject& a, const ASObject& b, const AlmostConstant& w, const std::vector<Caps>& caps);

nlohmann::ordered_json to_json(const AlmostConstant& w);
nlohmann::ordered_json to_json(const TorsionDivisor& d);
nlohmann::ordered_json to_json(const Caps& c);
nlohmann::ordered_json window_report(const AlmostConstant& w, const StableResult& r);

}  // namespace ellt::tmodel
