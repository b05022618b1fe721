#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "ellt/exact/poly.hpp"
#include "ellt/tmodel/asobject.hpp"

namespace ellt::affine {

using exact::Poly;
using exact::Rational;
using tmodel::Caps;
using tmodel::Representation;
using tmodel::TorsionDivisor;

enum class AffineKind { additive, multiplicative };

// num / den in one variable (z for G_m, x for G_a); gcd-reduced, den monic.
class LaurentFn {
 public:
  LaurentFn() : num_(Poly::constant(Rational(1))), den_(Poly::constant(Rational(1))) {}
  LaurentFn(Poly num, Poly den);
  static LaurentFn poly(Poly p) { return LaurentFn(std::move(p), Poly::constant(Rational(1))); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  friend LaurentFn operator*(const LaurentFn& a, const LaurentFn& b);
  friend LaurentFn operator+(const LaurentFn& a, const LaurentFn& b);
  LaurentFn inverse() const;
  LaurentFn pow(long e) const;
  friend bool operator==(const LaurentFn& a, const LaurentFn& b) = default;

 private:
  Poly num_;
  Poly den_;
};

// "num / den" with both in polynomial text form.
std::string to_string(const LaurentFn& f);

// The additive or multiplicative group with coordinate x or y = 1 - z; phi is
// cached per instance.
class AffineGroupData {
 public:
  explicit AffineGroupData(AffineKind kind) : kind_(kind) {}
  AffineKind kind() const { return kind_; }
  std::string name() const { return kind_ == AffineKind::additive ? "G_a" : "G_m"; }
  // x, or y = 1 - z.
  Poly coordinate() const;
  // [n](coordinate): n x, or 1 - z^n.
  Poly multiply_by(long n) const;
  // [n] = prod_{s | n} phi_s, solved for phi_n.
  Poly phi(long s) const;
  LaurentFn euler_class(long n) const;
  LaurentFn euler_class(const Representation& w) const;

 private:
  AffineKind kind_;
  mutable std::recursive_mutex mu_;
  mutable std::map<long, Poly> phi_;
};

LaurentFn euler_class(const AffineGroupData& g, long n);
LaurentFn euler_class(const AffineGroupData& g, const Representation& w);
LaurentFn phi(const AffineGroupData& g, long s);

struct SphereModule {
  LaurentFn generator;
  long rank = 1;
};

// Sections of O(-D(W)) form the free module on chi(W). Requires W^T = 0.
SphereModule affine_sphere_module(const AffineGroupData& g, const Representation& w);

// Windows: numerators z^j (j in [-span, span + deg Den]) or x^j (j in
// [0, span + deg Den]) over Den = prod phi_s^{bound_s}.
class AffineBackend : public tmodel::GroupBackend {
 public:
  explicit AffineBackend(std::shared_ptr<const AffineGroupData> g) : g_(std::move(g)) {}
  const AffineGroupData& group() const { return *g_; }
  std::string name() const override { return g_->name(); }
  long class_size(long s) const override { return g_->phi(s).degree(); }
  std::size_t window_dim(const Caps& caps) const override;
  tmodel::Matrix block(const Caps& caps, long s, long lower) const override;
  bool certifies(const Caps& caps, const TorsionDivisor& lower) const override;
  Caps default_caps(const TorsionDivisor& lower) const override;
  std::string element_text(const Caps& caps, const tmodel::Vector& coords) const override;
  LaurentFn element(const Caps& caps, const tmodel::Vector& coords) const;

 private:
  Poly denominator(const Caps& caps) const;
  long low_exponent(const Caps& caps) const;
  std::shared_ptr<const AffineGroupData> g_;
};

// The K-model object: Hom(S^0, Sigma^w M) has window divisor D_w.
tmodel::ASObject affine_object(std::shared_ptr<const AffineGroupData> g);

// Generic pipeline on S^{sign W}: stabilized dims, plus a check that every
// kernel element is a Laurent polynomial multiple of chi(W)^{-sign}.
struct AffineSphereResult {
  std::size_t h0 = 0;  // free rank of the window: the kernel rank at the witness caps
  std::size_t h1 = 0;
  bool generator_ok = false;
  LaurentFn generator;
  tmodel::StableResult stable;
};
AffineSphereResult affine_sphere_pipeline(std::shared_ptr<const AffineGroupData> g, const Representation& w,
                                          int sign);

}  // namespace ellt::affine
