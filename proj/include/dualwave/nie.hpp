#pragma once

#include "dualwave/grid.hpp"
#include "dualwave/quasi_newton.hpp"

#include <optional>
#include <vector>

namespace dualwave {

struct NieOptions {
  double a = 10.0;
  double eps_a = -1.0;    // convexity guard floor; defaults to 1e-3 * a when <= 0
  double grad_tol = 2e-9; // stopping tolerance on the gradient inf-norm
  double penalty = 1e30;  // magnitude of the sentinel used outside the domain
  double u_inf_step = 0.025;
  int max_qn_iters = 5000;

  double guard() const { return eps_a > 0.0 ? eps_a : 1e-3 * a; }
};

// Primal recovery w = (a wbar - nu - u_inf K nu) / (a + K nu). Throws
// DomainViolation listing the grid indices where the guard a + K nu > eps_a
// fails.
Vector dual_to_primal_w(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                        double u_inf, const NieOptions& opt);

// Concave dual objective S_h(nu) = -1/2 sum_j (a + K nu)_j w_j^2 h. Returns
// -penalty when the convexity guard fails.
double dual_objective(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                      double u_inf, const NieOptions& opt);

// Gradient of dual_objective: h * rho with rho = w + K(u_inf w + w^2/2), which
// is also the equation residual of the recovered w.
Vector dual_gradient(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                     double u_inf, const NieOptions& opt);

// Dense Hessian -h (I + K F)(a + K nu)^{-1}(I + F K) with F = diag(u_inf + w),
// symmetrized by averaging with its transpose.
Matrix dual_hessian(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                    double u_inf, const NieOptions& opt);

struct SpectralReport {
  Vector kappa;        // spectrum of the scaled negative Hessian at nu = 0, ascending
  double kappa1 = 0.0; // eigenvalue nearest zero (translation mode)
  Vector kappa_low;    // next four eigenvalues above the 1e-10 negligibility cut
  double min_sigma_c = 0.0;
};

// Spectrum of (I + K F)(I + F K) with F = diag(u_inf + wbar): the a-scaled
// negative second variation at nu = 0.
SpectralReport stability_spectrum(const PeriodicGrid& grid, const Vector& wbar, double u_inf);

struct NieSolveResult {
  WaveProfile profile;  // f = u_inf + w on the grid
  Vector nu;
  Vector rho;
  double rho_inf = 0.0;
  bool converged = false;
  QnReport qn;
};

// Maximize the dual objective from nu = 0 by BFGS on -S_h.
NieSolveResult solve_nie(const PeriodicGrid& grid, const Vector& wbar0, double u_inf,
                         const NieOptions& opt = {});

struct SweepEntry {
  double u_inf = 0.0;
  NieSolveResult solve;
  std::optional<SpectralReport> spectrum;
};

struct SweepOptions {
  NieOptions nie;
  bool spectra = true;
  std::vector<double> spectra_at;  // restrict spectra to these values; empty = all
  double min_step = 0.003125;
  int threads = 1;                 // parallel workers for the spectra pass
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  bool completed = true;
  std::string status;
};

// Path-following in u_inf: solve at u_start from wbar0, then step toward
// u_end resetting the base state to the previous solution, halving the step
// (down to min_step) when a solve fails. Partial results are returned on
// persistent failure.
SweepResult sweep_u_infinity(const PeriodicGrid& grid, double u_start, double u_end,
                             const Vector& wbar0, const SweepOptions& opt = {});

}  // namespace dualwave
