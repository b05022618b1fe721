#pragma once

#include <string>
#include <vector>

#include "ellt/curve/divisor.hpp"
#include "ellt/exact/matrix.hpp"

namespace ellt::tmodel {

using curve::TorsionDivisor;
using exact::Matrix;
using exact::Vector;

// Pole caps of a vertex window: poles of order <= bound[s] along the class s.
// Successive caps add step; span widens the numerator range on groups whose
// coordinate ring is not finite over the pole filtration (affine groups).
struct Caps {
  TorsionDivisor bound;
  TorsionDivisor step = TorsionDivisor::identity();
  long span = 0;

  Caps plus(long j) const { return Caps{bound + j * step, step, span}; }
  friend bool operator==(const Caps& a, const Caps& b) = default;
};

std::string to_string(const Caps& c);

// Coordinatized group data as seen by the generic q-map: a filtered space of
// functions with poles on order classes, and principal parts along classes.
class GroupBackend {
 public:
  virtual ~GroupBackend() = default;
  virtual std::string name() const = 0;
  // Number of points of exact order s (the degree of the class).
  virtual long class_size(long s) const = 0;
  long degree(const TorsionDivisor& d) const;

  virtual std::size_t window_dim(const Caps& caps) const = 0;
  // Principal parts of the window basis along s, between pole orders lower
  // (exclusive) and caps.bound[s]; class_size(s) * depth rows. Zero rows
  // when caps.bound[s] <= lower.
  virtual Matrix block(const Caps& caps, long s, long lower) const = 0;
  // Caps large enough that kernel and cokernel of q equal H^0 and H^1 of the
  // line bundle with divisor lower.
  virtual bool certifies(const Caps& caps, const TorsionDivisor& lower) const = 0;
  virtual Caps default_caps(const TorsionDivisor& lower) const = 0;
  // The window element with the given coordinates, as text.
  virtual std::string element_text(const Caps& caps, const Vector& coords) const = 0;
};

}  // namespace ellt::tmodel
