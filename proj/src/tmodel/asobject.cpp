#include "ellt/tmodel/asobject.hpp"

#include "ellt/errors.hpp"

namespace ellt::tmodel {

std::string to_string(const Caps& c) {
  return "bound " + curve::to_string(c.bound) + " step " + curve::to_string(c.step) + " span " +
         std::to_string(c.span);
}

long GroupBackend::degree(const TorsionDivisor& d) const {
  long deg = 0;
  for (auto [s, n] : d.coeffs()) deg += n * class_size(s);
  return deg;
}

ASObject::ASObject(std::shared_ptr<const GroupBackend> backend, LowerFn lower, bool rigid_even)
    : backend_(std::move(backend)), lower_(std::move(lower)), rigid_even_(rigid_even) {
  if (!backend_ || !lower_) throw ValidationError("ASObject needs a backend and window bounds");
}

ASObject ASObject::zero() { return ASObject(); }

const GroupBackend& ASObject::backend() const {
  if (!backend_) throw ValidationError("the zero object has no backend");
  return *backend_;
}

TorsionDivisor ASObject::lower(const AlmostConstant& w) const {
  if (!backend_) return {};
  return lower_(w + offset_);
}

std::size_t ASObject::vertex_dim(const Caps& caps) const { return backend_ ? backend_->window_dim(caps) : 0; }

std::size_t ASObject::torsion_dim(long s, long depth) const {
  if (!backend_ || depth <= 0) return 0;
  return static_cast<std::size_t>(depth * backend_->class_size(s));
}

QWindow ASObject::q_window(const AlmostConstant& w, const Caps& caps, const std::set<long>& dropped) const {
  QWindow out;
  if (!backend_) return out;
  const TorsionDivisor lo = lower(w);
  std::set<long> classes;
  for (auto& [s, n] : caps.bound.coeffs()) classes.insert(s);
  for (auto& [s, n] : lo.coeffs()) classes.insert(s);
  const std::size_t cols = backend_->window_dim(caps);
  out.matrix = Matrix(0, cols);
  for (long s : classes) {
    if (dropped.count(s)) continue;
    const long top = caps.bound[s];
    if (top <= lo[s]) continue;
    Matrix b = backend_->block(caps, s, lo[s]);
    if (b.rows() == 0) continue;
    out.blocks.push_back({s, lo[s], top, out.matrix.rows(), b.rows()});
    out.matrix = out.matrix.stacked(b);
  }
  return out;
}

WindowEval ASObject::evaluate(const AlmostConstant& w, const Caps& caps, bool want_vectors,
                              const std::set<long>& dropped) const {
  WindowEval ev;
  if (!backend_) return ev;
  QWindow q = q_window(w, caps, dropped);
  ev.window_dim = q.matrix.cols();
  ev.rows = q.matrix.rows();
  ev.blocks = std::move(q.blocks);
  std::size_t r = 0;
  if (want_vectors) {
    auto ki = exact::kernel_and_image(q.matrix);
    r = ki.rank;
    ev.kernel = std::move(ki.kernel);
    ev.cokernel = exact::cokernel_complement(q.matrix);
  } else {
    r = exact::rank(q.matrix);
  }
  ev.hom_dim = ev.window_dim - r;
  ev.ext_dim = ev.rows - r;
  return ev;
}

ASObject ASObject::suspend(const AlmostConstant& w) const {
  ASObject out = *this;
  out.offset_ = offset_ + w;
  return out;
}

StableResult stabilize(const std::function<WindowEval(const Caps&)>& eval, const Caps& caps, bool certified) {
  if (!certified) throw CapTooSmall("caps " + to_string(caps) + " are below the certified bound");
  StableResult res;
  res.caps = caps;
  res.certified = true;
  res.first = eval(caps);
  for (long j = 1; j <= 2; ++j) {
    WindowEval ev = eval(caps.plus(j));
    if (ev.hom_dim != res.first.hom_dim || ev.ext_dim != res.first.ext_dim)
      throw CapTooSmall("window dimensions changed between caps and caps+" + std::to_string(j));
  }
  res.hom_dim = res.first.hom_dim;
  res.ext_dim = res.first.ext_dim;
  return res;
}

StableResult stabilize(const ASObject& m, const AlmostConstant& w, const std::optional<Caps>& caps,
                       bool want_vectors) {
  if (m.is_zero()) {
    StableResult res;
    res.certified = true;
    if (caps) res.caps = *caps;
    return res;
  }
  const TorsionDivisor lo = m.lower(w);
  const Caps c = caps ? *caps : m.backend().default_caps(lo);
  bool first = true;
  return stabilize(
      [&](const Caps& cc) {
        bool vec = want_vectors && first;
        first = false;
        return m.evaluate(w, cc, vec);
      },
      c, m.backend().certifies(c, lo));
}

StableResult hom_from_sphere(const ASObject& m, const AlmostConstant& w, const std::optional<Caps>& caps) {
  return stabilize(m, w, caps, true);
}

std::size_t ext_window(const ASObject& m, const AlmostConstant& w, const std::optional<Caps>& caps) {
  return stabilize(m, w, caps, false).ext_dim;
}

bool window_equal(const ASObject& a, const ASObject& b, const AlmostConstant& w, const std::vector<Caps>& caps) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
  if (a.weight(w) != b.weight(w)) return false;
  for (const Caps& c : caps) {
    QWindow qa = a.q_window(w, c), qb = b.q_window(w, c);
    if (!(qa.matrix == qb.matrix) || qa.blocks.size() != qb.blocks.size()) return false;
    for (std::size_t i = 0; i < qa.blocks.size(); ++i) {
      const auto &x = qa.blocks[i], &y = qb.blocks[i];
      if (x.s != y.s || x.lower != y.lower || x.top != y.top || x.rows != y.rows) return false;
    }
  }
  return true;
}

nlohmann::ordered_json to_json(const AlmostConstant& w) {
  nlohmann::ordered_json dev = nlohmann::ordered_json::object();
  for (auto [s, x] : w.deviations()) dev[std::to_string(s)] = x;
  return {{"tail", w.tail()}, {"dev", dev}};
}

nlohmann::ordered_json to_json(const TorsionDivisor& d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (auto [s, n] : d.coeffs()) j[std::to_string(s)] = n;
  return j;
}

nlohmann::ordered_json to_json(const Caps& c) {
  return {{"bound", to_json(c.bound)}, {"step", to_json(c.step)}, {"span", c.span}};
}

nlohmann::ordered_json window_report(const AlmostConstant& w, const StableResult& r) {
  return {{"w", to_json(w)},
          {"caps", to_json(r.caps)},
          {"hom_dim", r.hom_dim},
          {"ext_dim", r.ext_dim},
          {"certified", r.certified}};
}

}  // namespace ellt::tmodel
