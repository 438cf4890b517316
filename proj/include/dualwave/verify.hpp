#pragma once

#include "dualwave/grid.hpp"
#include "dualwave/lattice.hpp"
#include "dualwave/quasi_newton.hpp"

#include <optional>
#include <string>
#include <utility>

namespace dualwave {

struct VerificationReport {
  std::optional<double> err_max_interior;  // finite-difference residual, sup over the interior window
  std::optional<double> d_of_m;            // refinement difference, percent
  std::optional<double> nie_residual_inf;
  std::optional<double> tail_wavenumber;
  std::string notes;
};

// Finite-difference check of the reduced profile equation on uniform nodal
// data: centered derivative plus the shifted-square difference, maximized over
// the interior window (-L + 2.5, L - 2.5). Requires 1/dx integer and nodes
// covering the +-1 shifts of the window.
double fd_residual(const WaveProfile& f, double dx, double L);

// Mesh-doubling difference in percent: max over the coarse nodes of
// |f_2m - f_m| / f_RMS * 100, with f_RMS taken from the reference profile.
double refinement_diff(const WaveProfile& f_m, const WaveProfile& f_2m, const WaveProfile& f_ref);

// Residual of the integrated profile equation in perturbation form,
// rho = w + u_inf K w + K(w^2)/2, and its inf-norm.
std::pair<Vector, double> nie_residual(const PeriodicGrid& grid, const Vector& w, double u_inf);

// pi / (mean spacing of zero crossings) inside [lo, hi]. Throws
// TooFewCrossings when fewer than 6 sign changes are found.
double tail_wavenumber(const WaveProfile& w, double lo, double hi);

struct GradientCheck {
  double max_rel_err = 0.0;
  bool hit_penalty = false;
};

// Central-difference audit of an analytic gradient, normalized by the
// gradient sup-norm.
GradientCheck gradient_check(const Objective& obj, const Vector& x, double step);

// Sup-norm residual of the long-wave approximate profile in the lattice
// profile equation -c f' + (f(x+1)^2 - f(x-1)^2)/4 = 0, scanned over
// [-x_max, x_max] with sample spacing dx.
double kdv_lattice_residual(const KdvParams& params, double x_max, double dx);

}  // namespace dualwave
