#pragma once

#include "dualwave/types.hpp"

#include <cmath>

namespace dualwave {

// Uniform periodic grid over (-L, L): x_j = -L + j h, j = 0..N-1, h = 2L/N.
// The unit shift x -> x +- 1 must land on grid points, so 1/h has to be a
// positive integer (stored as `unit`).
struct PeriodicGrid {
  double L;
  int N;
  double h;
  int unit;

  PeriodicGrid(double L_, int N_) : L(L_), N(N_), h(2.0 * L_ / N_), unit(0) {
    if (!(L > 0.0)) throw InvalidGrid("PeriodicGrid: L must be positive");
    if (N < 4) throw InvalidGrid("PeriodicGrid: need at least 4 points");
    const double inv_h = N / (2.0 * L);
    unit = static_cast<int>(std::llround(inv_h));
    if (unit < 1 || std::abs(inv_h - unit) > 1e-9 * inv_h)
      throw InvalidGrid("PeriodicGrid: 1/h must be a positive integer (shift by 1 must hit grid points)");
  }

  double x(int j) const { return -L + j * h; }

  Vector points() const {
    Vector p(N);
    for (int j = 0; j < N; ++j) p[j] = x(j);
    return p;
  }

  // Periodic rectangle rule.
  double integrate(const Vector& v) const { return h * v.sum(); }
};

}  // namespace dualwave
