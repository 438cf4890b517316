#pragma once

#include "dualwave/grid.hpp"

#include <limits>

namespace dualwave {

inline constexpr double kInfiniteDomain = std::numeric_limits<double>::infinity();

// Moving-window integral (Kv)(x) = integral of v over [x-1, x+1], discretized
// by the trapezoid rule on the periodic grid and applied through the FFT of
// the circulant stencil.
Vector apply_window(const PeriodicGrid& grid, const Vector& v);

// Dense circulant realization of apply_window. Entries are h or h/2; every
// row sums to 2.
Matrix window_matrix(const PeriodicGrid& grid);

// Same stencil with zero extension outside (-L, L) instead of periodic wrap.
Vector apply_window_zeropad(const PeriodicGrid& grid, const Vector& v);

// Fourier multipliers of the discrete operator. Entry k acts on the mode
// exp(i pi k x / L) and converges to 2 sinc(pi k / L) at rate O(h^2).
Vector window_symbol(const PeriodicGrid& grid);

struct SincMin {
  double xi_star;  // minimizer of sinc on (pi, 2 pi)
  double sigma0;   // -2 sinc(xi_star)
};
SincMin min_sinc();

// Bounded invertibility of I + u_inf K on (-L, L); pass kInfiniteDomain for
// the whole line. Finite-L modes are tested against a 1e-12 resonance margin.
bool is_invertible(double u_inf, double L);

// Bottom of the continuous spectrum of (I + u_inf K)^2.
double min_continuous_spectrum(double u_inf);

// Solve (I + u_inf K) x = rhs by Fourier division. Throws SingularOperator
// naming the offending mode when some 1 + u_inf * symbol_k is within 1e-10
// of zero.
Vector solve_id_plus_u_window(const PeriodicGrid& grid, const Vector& rhs, double u_inf);

}  // namespace dualwave
