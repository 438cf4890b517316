#pragma once

#include "dualwave/types.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <string>

namespace dualwave {

// Uniform linear-element mesh over the extended domain (-L-2, L+2). The dual
// unknowns live at the nodes strictly inside (-L, L); everything else is
// pinned to zero. Elements per unit length (`unit` = 1/dx) must be integer so
// the shifts x +- 1 and x +- 2 map Gauss points onto Gauss points.
struct FemMesh {
  double L;
  int elements;
  double dx;
  int unit;

  FemMesh(double L_, int elements_);

  int nodes() const { return elements + 1; }
  double node_x(int a) const { return -L - 2.0 + a * dx; }

  // Unknown (interior) node index range, half-open.
  int s_begin() const { return 2 * unit + 1; }
  int s_end() const { return elements - 2 * unit; }
  int s_count() const { return s_end() - s_begin(); }
  bool in_s(int a) const { return a >= s_begin() && a < s_end(); }

  // Elements spanning [-L, L], half-open.
  int e_begin() const { return 2 * unit; }
  int e_end() const { return elements - 2 * unit; }

  // 2-point Gauss abscissa q in {0, 1} inside element e.
  double gauss_x(int e, int q) const;
};

struct DdeOptions {
  double a = 1e6;
  double T = 0.95;          // convexity threshold on min(Delta/a)
  double tol = 1e-12;       // residual inf-norm tolerance
  double alpha_min = 0.01;  // step-size floor triggering a base-state reset
  int max_newton = 200;     // total accepted Newton iterations
  int max_resets = 50;
  bool step_control = true; // false: plain Newton, no convexity check or resets
};

// Base-state samples at the two Gauss points of every element of the extended
// mesh, Gauss-major: values[2 e + q].
struct BaseState {
  Vector values;
  std::string provenance;
};

BaseState make_base_state(const FemMesh& mesh, const std::function<double(double)>& fbar,
                          std::string provenance);

// Dual-to-primal map (a fbar + lambda') / (a + lam_minus - lam_plus), with the
// 0/0 branch returning 0. A zero denominator against a nonzero numerator
// throws DtpSingular.
double dual_to_primal(double a, double fbar, double lambda_prime, double lam_minus,
                      double lam_plus, double where = 0.0);

// Piecewise-linear evaluation of the nodal dual field.
struct DualPoint {
  double value;
  double slope;
};
DualPoint dual_value_at(const FemMesh& mesh, const Vector& lambda, double x);

// Weak residual R_A over the interior nodes, Gauss quadrature on [-L, L].
Vector assemble_residual(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                         const DdeOptions& opt);

// Exact tangent of assemble_residual, including the shifted-argument chains.
Eigen::SparseMatrix<double> assemble_jacobian(const FemMesh& mesh, const Vector& lambda,
                                              const BaseState& base, const DdeOptions& opt);

struct ConvexityCheck {
  bool ok;
  double min_ratio;  // min over the Gauss points of (-L, L) of Delta/a
};
ConvexityCheck convexity_check(const FemMesh& mesh, const Vector& lambda, const DdeOptions& opt);

struct NewtonStep {
  Vector lambda;      // accepted iterate when !reset_needed
  double alpha;       // step factor that satisfied the convexity condition
  bool reset_needed = false;
};

// One damped Newton update: solve J d = -R, then halve alpha until the trial
// iterate satisfies the convexity condition; signals reset_needed when alpha
// falls below the floor.
NewtonStep newton_step(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                       double alpha, const DdeOptions& opt);

// Primal field at the Gauss points of elements [e_lo, e_hi).
Vector primal_gauss(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                    const DdeOptions& opt, int e_lo, int e_hi);

// L2 projection of Gauss-point values on [-L, L] onto the nodal hat basis.
Vector l2_project(const FemMesh& mesh, const Vector& gauss_values);

struct DdeSolve {
  WaveProfile profile;  // projected primal field at the nodes of [-L, L]
  Vector lambda;
  BaseState base;       // base state in effect at convergence
  SolverReport report;
};

// Newton-Raphson with step-size control and adaptive base-state resets.
// lambda0, when given, overrides the zero initial guess of the first phase.
DdeSolve solve_dde(const FemMesh& mesh, const BaseState& fbar0, const DdeOptions& opt = {},
                   const Vector* lambda0 = nullptr);

}  // namespace dualwave
