#include "dualwave/dde.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>
#include <vector>

namespace dualwave {

namespace {

// Reference offsets of the 2-point Gauss rule on [0, 1].
constexpr double kGauss0 = 0.5 - 0.5 / 1.7320508075688772935;
constexpr double kGauss1 = 0.5 + 0.5 / 1.7320508075688772935;
inline double gauss_t(int q) { return q == 0 ? kGauss0 : kGauss1; }

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Everything the DtP map needs at one Gauss point.
struct PointState {
  double fhat;
  double delta;
};

struct Assembler {
  const FemMesh& mesh;
  const Vector& lambda;
  const BaseState& base;
  const DdeOptions& opt;

  double lam_at(int e, int q) const {
    const double t = gauss_t(q);
    return lambda[e] * (1.0 - t) + lambda[e + 1] * t;
  }
  double slope_at(int e) const { return (lambda[e + 1] - lambda[e]) / mesh.dx; }

  PointState point(int e, int q) const {
    const double lm = lam_at(e - mesh.unit, q);
    const double lp = lam_at(e + mesh.unit, q);
    const double lprime = slope_at(e);
    const double fb = base.values[2 * e + q];
    PointState s;
    s.delta = opt.a + lm - lp;
    s.fhat = dual_to_primal(opt.a, fb, lprime, lm, lp, mesh.gauss_x(e, q));
    return s;
  }
};

}  // namespace

FemMesh::FemMesh(double L_, int elements_) : L(L_), elements(elements_), dx(0.0), unit(0) {
  if (!(L > 0.0)) throw InvalidInput("FemMesh: L must be positive");
  if (elements < 20) throw InvalidInput("FemMesh: need at least 20 elements");
  dx = (2.0 * L + 4.0) / elements;
  const double inv = 1.0 / dx;
  unit = static_cast<int>(std::llround(inv));
  if (unit < 1 || std::abs(inv - unit) > 1e-9 * inv)
    throw InvalidInput("FemMesh: 1/dx must be a positive integer (shift by 1 must hit nodes)");
}

double FemMesh::gauss_x(int e, int q) const { return node_x(e) + dx * gauss_t(q); }

BaseState make_base_state(const FemMesh& mesh, const std::function<double(double)>& fbar,
                          std::string provenance) {
  BaseState b;
  b.values.resize(2 * mesh.elements);
  for (int e = 0; e < mesh.elements; ++e)
    for (int q = 0; q < 2; ++q) b.values[2 * e + q] = fbar(mesh.gauss_x(e, q));
  b.provenance = std::move(provenance);
  return b;
}

double dual_to_primal(double a, double fbar, double lambda_prime, double lam_minus,
                      double lam_plus, double where) {
  const double delta = a + lam_minus - lam_plus;
  const double num = a * fbar + lambda_prime;
  if (delta == 0.0) {
    if (num == 0.0) return 0.0;
    throw DtpSingular("dual_to_primal: zero denominator with nonzero numerator", where);
  }
  return num / delta;
}

DualPoint dual_value_at(const FemMesh& mesh, const Vector& lambda, double x) {
  if (x < mesh.node_x(0) - 1e-12 || x > mesh.node_x(mesh.elements) + 1e-12)
    throw InvalidInput("dual_value_at: x outside the extended domain");
  int e = static_cast<int>(std::floor((x - mesh.node_x(0)) / mesh.dx));
  e = std::max(0, std::min(e, mesh.elements - 1));
  const double t = (x - mesh.node_x(e)) / mesh.dx;
  return {lambda[e] * (1.0 - t) + lambda[e + 1] * t, (lambda[e + 1] - lambda[e]) / mesh.dx};
}

Vector assemble_residual(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                         const DdeOptions& opt) {
  if (lambda.size() != mesh.nodes()) throw InvalidInput("assemble_residual: nodal size mismatch");
  if (base.values.size() != 2 * mesh.elements)
    throw InvalidInput("assemble_residual: base state size mismatch");

  Assembler as{mesh, lambda, base, opt};
  Vector R = Vector::Zero(mesh.s_count());
  const double w = 0.5 * mesh.dx;
  for (int e = mesh.e_begin(); e < mesh.e_end(); ++e) {
    for (int q = 0; q < 2; ++q) {
      const PointState c = as.point(e, q);
      const PointState p = as.point(e + mesh.unit, q);
      const PointState m = as.point(e - mesh.unit, q);
      const double bracket = 0.5 * (p.fhat * p.fhat - m.fhat * m.fhat);
      const double t = gauss_t(q);
      for (int local = 0; local < 2; ++local) {
        const int A = e + local;
        if (!mesh.in_s(A)) continue;
        const double N = local == 0 ? 1.0 - t : t;
        const double Np = local == 0 ? -1.0 / mesh.dx : 1.0 / mesh.dx;
        R[A - mesh.s_begin()] += w * (-Np * c.fhat + N * bracket);
      }
    }
  }
  return R;
}

Eigen::SparseMatrix<double> assemble_jacobian(const FemMesh& mesh, const Vector& lambda,
                                              const BaseState& base, const DdeOptions& opt) {
  if (lambda.size() != mesh.nodes()) throw InvalidInput("assemble_jacobian: nodal size mismatch");
  Assembler as{mesh, lambda, base, opt};

  const int n = mesh.s_count();
  std::vector<Triplet> trip;
  trip.reserve(static_cast<size_t>(mesh.e_end() - mesh.e_begin()) * 80);
  const double w = 0.5 * mesh.dx;

  // One column contribution: node B with shape value or derivative `coeff`.
  struct Col {
    int node;
    double dfc, dfp, dfm;  // partials of fhat(x), fhat(x+1), fhat(x-1)
  };

  for (int e = mesh.e_begin(); e < mesh.e_end(); ++e) {
    for (int q = 0; q < 2; ++q) {
      const PointState c = as.point(e, q);
      const PointState p = as.point(e + mesh.unit, q);
      const PointState m = as.point(e - mesh.unit, q);
      const double t = gauss_t(q);
      const double shape[2] = {1.0 - t, t};
      const double dshape[2] = {-1.0 / mesh.dx, 1.0 / mesh.dx};

      Col cols[18];
      int nc = 0;
      auto push = [&](int node, double dfc, double dfp, double dfm) {
        cols[nc++] = {node, dfc, dfp, dfm};
      };
      for (int l = 0; l < 2; ++l) {
        // fhat(x): lambda'(x) through element e, lambda(x-1), lambda(x+1)
        push(e + l, dshape[l] / c.delta, 0.0, 0.0);
        push(e - mesh.unit + l, shape[l] * (-c.fhat / c.delta), 0.0, 0.0);
        push(e + mesh.unit + l, shape[l] * (c.fhat / c.delta), 0.0, 0.0);
        // fhat(x+1): lambda'(x+1), lambda(x), lambda(x+2)
        push(e + mesh.unit + l, 0.0, dshape[l] / p.delta, 0.0);
        push(e + l, 0.0, shape[l] * (-p.fhat / p.delta), 0.0);
        push(e + 2 * mesh.unit + l, 0.0, shape[l] * (p.fhat / p.delta), 0.0);
        // fhat(x-1): lambda'(x-1), lambda(x-2), lambda(x)
        push(e - mesh.unit + l, 0.0, 0.0, dshape[l] / m.delta);
        push(e - 2 * mesh.unit + l, 0.0, 0.0, shape[l] * (-m.fhat / m.delta));
        push(e + l, 0.0, 0.0, shape[l] * (m.fhat / m.delta));
      }

      for (int local = 0; local < 2; ++local) {
        const int A = e + local;
        if (!mesh.in_s(A)) continue;
        const double N = shape[local];
        const double Np = dshape[local];
        for (int k = 0; k < nc; ++k) {
          const Col& col = cols[k];
          if (!mesh.in_s(col.node)) continue;
          const double v = w * (-Np * col.dfc + N * (p.fhat * col.dfp - m.fhat * col.dfm));
          if (v != 0.0)
            trip.emplace_back(A - mesh.s_begin(), col.node - mesh.s_begin(), v);
        }
      }
    }
  }

  SpMat J(n, n);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

ConvexityCheck convexity_check(const FemMesh& mesh, const Vector& lambda, const DdeOptions& opt) {
  const BaseState unused;  // the denominator does not touch the base state
  Assembler as{mesh, lambda, unused, opt};
  double lowest = std::numeric_limits<double>::infinity();
  for (int e = mesh.e_begin(); e < mesh.e_end(); ++e) {
    for (int q = 0; q < 2; ++q) {
      const double lm = as.lam_at(e - mesh.unit, q);
      const double lp = as.lam_at(e + mesh.unit, q);
      lowest = std::min(lowest, (opt.a + lm - lp) / opt.a);
    }
  }
  return {lowest > opt.T, lowest};
}

namespace {

Vector scatter(const FemMesh& mesh, const Vector& dl_s) {
  Vector full = Vector::Zero(mesh.nodes());
  for (int a = mesh.s_begin(); a < mesh.s_end(); ++a) full[a] = dl_s[a - mesh.s_begin()];
  return full;
}

struct StepOutcome {
  Vector lambda;
  Vector residual;  // residual at the accepted iterate
  double alpha = 1.0;
  bool reset_needed = false;
};

// Damped update shared by newton_step and the solver. `floor_check` stops
// halving at alpha_min (the standalone-op contract); the solver instead
// checks the floor at the top of its loop and lets alpha sink within a step.
StepOutcome controlled_step(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                            double alpha, const DdeOptions& opt, const Vector& R,
                            bool floor_check) {
  SpMat J = assemble_jacobian(mesh, lambda, base, opt);
  Eigen::SparseLU<SpMat> lu;
  lu.compute(J);
  if (lu.info() != Eigen::Success)
    throw LinearSolveFailure("newton_step: jacobian factorization failed");
  const Vector dl = scatter(mesh, lu.solve(Vector(-R)));

  StepOutcome out;
  out.alpha = alpha;
  for (int halvings = 0; halvings < 1100; ++halvings) {
    if (floor_check && out.alpha < opt.alpha_min) {
      out.reset_needed = true;
      out.lambda = lambda;
      return out;
    }
    Vector trial = lambda + out.alpha * dl;
    if (opt.step_control) {
      if (!convexity_check(mesh, trial, opt).ok) {
        out.alpha *= 0.5;
        continue;
      }
      try {
        out.residual = assemble_residual(mesh, trial, base, opt);
      } catch (const DtpSingular&) {
        // Singular map in the outer strips; treat like a convexity failure.
        out.alpha *= 0.5;
        continue;
      }
    } else {
      out.residual = assemble_residual(mesh, trial, base, opt);
    }
    out.lambda = std::move(trial);
    return out;
  }
  out.reset_needed = true;
  out.lambda = lambda;
  return out;
}

}  // namespace

NewtonStep newton_step(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                       double alpha, const DdeOptions& opt) {
  const Vector R = assemble_residual(mesh, lambda, base, opt);
  StepOutcome out = controlled_step(mesh, lambda, base, alpha, opt, R, true);
  return {out.lambda, out.alpha, out.reset_needed};
}

Vector primal_gauss(const FemMesh& mesh, const Vector& lambda, const BaseState& base,
                    const DdeOptions& opt, int e_lo, int e_hi) {
  Assembler as{mesh, lambda, base, opt};
  Vector out(2 * (e_hi - e_lo));
  for (int e = e_lo; e < e_hi; ++e)
    for (int q = 0; q < 2; ++q) out[2 * (e - e_lo) + q] = as.point(e, q).fhat;
  return out;
}

Vector l2_project(const FemMesh& mesh, const Vector& gauss_values) {
  const int ne = mesh.e_end() - mesh.e_begin();
  if (gauss_values.size() != 2 * ne)
    throw InvalidInput("l2_project: expected Gauss values on the elements of [-L, L]");
  const int n = ne + 1;  // nodes of [-L, L] inclusive
  std::vector<Triplet> trip;
  Vector b = Vector::Zero(n);
  const double w = 0.5 * mesh.dx;
  for (int e = 0; e < ne; ++e) {
    for (int q = 0; q < 2; ++q) {
      const double t = gauss_t(q);
      const double shape[2] = {1.0 - t, t};
      const double fv = gauss_values[2 * e + q];
      for (int i = 0; i < 2; ++i) {
        b[e + i] += w * shape[i] * fv;
        for (int j = 0; j < 2; ++j) trip.emplace_back(e + i, e + j, w * shape[i] * shape[j]);
      }
    }
  }
  SpMat M(n, n);
  M.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<SpMat> ldlt(M);
  if (ldlt.info() != Eigen::Success) throw LinearSolveFailure("l2_project: mass matrix factorization failed");
  return ldlt.solve(b);
}

DdeSolve solve_dde(const FemMesh& mesh, const BaseState& fbar0, const DdeOptions& opt,
                   const Vector* lambda0) {
  const auto t_start = std::chrono::steady_clock::now();
  DdeSolve out;
  out.base = fbar0;
  SolverReport& rep = out.report;

  Vector lambda = lambda0 ? *lambda0 : Vector::Zero(mesh.nodes());
  if (lambda.size() != mesh.nodes()) throw InvalidInput("solve_dde: lambda0 size mismatch");

  auto fail = [&](const std::string& status) {
    rep.converged = false;
    rep.status = status;
    rep.final_residual =
        rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
    out.lambda = lambda;
    // Still expose the current primal field when it can be evaluated.
    try {
      const Vector fh = primal_gauss(mesh, lambda, out.base, opt, mesh.e_begin(), mesh.e_end());
      const Vector nodal = l2_project(mesh, fh);
      out.profile.x.resize(nodal.size());
      for (int i = 0; i < nodal.size(); ++i) out.profile.x[i] = mesh.node_x(mesh.e_begin() + i);
      out.profile.f = nodal;
      out.profile.c = -0.5;
    } catch (const std::exception&) {
    }
    rep.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  Vector R;
  try {
    R = assemble_residual(mesh, lambda, out.base, opt);
  } catch (const DtpSingular&) {
    fail("dtp-singular at the initial iterate");
    return out;
  }
  double r = R.lpNorm<Eigen::Infinity>();
  rep.residual_history.push_back(r);

  double alpha = 1.0;
  bool phase_first = true;
  const double r_scale = std::max(r, 1.0);

  while (true) {
    if (r < opt.tol) {
      rep.converged = true;
      rep.status = "converged";
      break;
    }
    if (rep.iterations >= opt.max_newton) {
      fail("max_newton exceeded");
      return out;
    }
    if (opt.step_control && alpha < opt.alpha_min) {
      // Base-state reset: adopt the current primal field on the consumed range.
      ++rep.resets;
      if (rep.resets > opt.max_resets) {
        fail("max_resets exceeded");
        return out;
      }
      const Vector fh = primal_gauss(mesh, lambda, out.base, opt, mesh.unit,
                                     mesh.elements - mesh.unit);
      for (int e = mesh.unit; e < mesh.elements - mesh.unit; ++e)
        for (int q = 0; q < 2; ++q)
          out.base.values[2 * e + q] = fh[2 * (e - mesh.unit) + q];
      out.base.provenance = "reset";
      lambda.setZero();
      alpha = 1.0;
      phase_first = true;
      R = assemble_residual(mesh, lambda, out.base, opt);
      r = R.lpNorm<Eigen::Infinity>();
      rep.residual_history.push_back(r);
      continue;
    }

    StepOutcome step;
    try {
      step = controlled_step(mesh, lambda, out.base, alpha, opt, R, false);
    } catch (const LinearSolveFailure&) {
      fail("linear solve failed");
      return out;
    } catch (const DtpSingular&) {
      fail("dtp-singular during assembly");
      return out;
    }
    if (step.reset_needed) {
      alpha = 0.0;  // force the reset branch
      continue;
    }

    lambda = std::move(step.lambda);
    R = std::move(step.residual);
    alpha = step.alpha;
    const double r_new = R.lpNorm<Eigen::Infinity>();
    ++rep.iterations;
    rep.residual_history.push_back(r_new);
    rep.alpha_history.push_back(alpha);

    if (!std::isfinite(r_new) || (!opt.step_control && r_new > 1e6 * r_scale)) {
      fail("diverged");
      return out;
    }
    if (opt.step_control && phase_first && r_new > r) {
      fail("aborted: first controlled step increased the residual");
      return out;
    }
    phase_first = false;
    r = r_new;
  }

  rep.final_residual = r;
  out.lambda = lambda;

  // Project the primal field onto the nodes of [-L, L].
  const Vector fh = primal_gauss(mesh, lambda, out.base, opt, mesh.e_begin(), mesh.e_end());
  const Vector nodal = l2_project(mesh, fh);
  const int n0 = mesh.e_begin();
  out.profile.x.resize(nodal.size());
  for (int i = 0; i < nodal.size(); ++i) out.profile.x[i] = mesh.node_x(n0 + i);
  out.profile.f = nodal;
  out.profile.c = -0.5;
  // Far-field metadata: average over the outer half-units of the domain.
  const int k = std::max(1, mesh.unit / 2);
  out.profile.u_inf = 0.5 * (nodal.head(k).mean() + nodal.tail(k).mean());

  rep.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return out;
}

}  // namespace dualwave
