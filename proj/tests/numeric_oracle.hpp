#pragma once

// Floating-point oracles independent of the exact code paths: complex roots
// by Durand-Kerner and the chord-tangent group law.

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "ellt/exact/poly.hpp"

namespace oracle {

using C = std::complex<long double>;

inline std::vector<C> roots(const ellt::exact::Poly& p) {
  const long n = p.degree();
  std::vector<C> c(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = static_cast<long double>(p.coeff(static_cast<std::size_t>(i)).get_d());
  for (auto& x : c) x /= c.back();
  auto eval = [&](C z) {
    C acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  };
  std::vector<C> z(static_cast<std::size_t>(n));
  C seed(0.4L, 0.9L);
  for (long i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, static_cast<long double>(i)) * 1.3L;
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      C den = 1;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-17L) break;
  }
  return z;
}

struct Point {
  C x, y;
  bool inf = false;
};

inline Point add(const Point& p, const Point& q, long double a) {
  if (p.inf) return q;
  if (q.inf) return p;
  C m;
  if (std::abs(p.x - q.x) < 1e-9L) {
    if (std::abs(p.y + q.y) < 1e-9L) return {0, 0, true};
    m = (3.0L * p.x * p.x + a) / (2.0L * p.y);
  } else {
    m = (q.y - p.y) / (q.x - p.x);
  }
  C x = m * m - p.x - q.x;
  return {x, m * (p.x - x) - p.y, false};
}

// Exact order of p when it is at most bound.
inline std::optional<long> order(const Point& p, long double a, long bound) {
  Point acc = p;
  for (long k = 1; k <= bound; ++k) {
    if (acc.inf) return k;
    acc = add(acc, p, a);
  }
  return std::nullopt;
}

}  // namespace oracle
