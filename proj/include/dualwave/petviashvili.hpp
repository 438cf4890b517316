#pragma once

#include "dualwave/grid.hpp"

#include <string>
#include <vector>

namespace dualwave {

struct PvOptions {
  double q = 1.4;        // stabilizing exponent, in (1, 2]
  double tol_c = 1e-6;   // stop on |C - 1| < tol_c (disabled when <= 0)
  double res_tol = 0.0;  // stop on equation residual inf-norm (disabled when <= 0)
  int max_iters = 200;
};

struct PvResult {
  Vector g;                              // last iterate; the wave perturbation is w = -g
  std::vector<double> c_history;
  std::vector<double> residual_history;  // residual of w = -g, entry 0 is the seed
  bool converged = false;
  bool unstable = false;
  int iterations = 0;
  std::string status;
};

// Fixed-point iteration g <- C^q * K(g^2)/2 for the integrated profile
// equation with zero constant. Stops on |C - 1| < tol_c; flags `unstable` when
// the residual grows past 10x the seed residual or fails to improve on it.
PvResult pv_basic(const PeriodicGrid& grid, const Vector& g0, const PvOptions& opt = {});

// Preconditioned variant for general far-field value: Step 1 becomes
// g <- (I + u_inf K)^{-1} K(g^2)/2, solving for w = -g.
PvResult pv_nie(const PeriodicGrid& grid, const Vector& w0, double u_inf, const PvOptions& opt = {});

}  // namespace dualwave
