#include "dualwave/nie.hpp"

#include "dualwave/verify.hpp"
#include "dualwave/window_op.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dualwave {

namespace {

struct DualEval {
  Vector knu;
  Vector denom;
  Vector w;
  bool feasible = true;
  std::vector<int> bad;
};

DualEval evaluate_dual(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                       double u_inf, const NieOptions& opt) {
  if (nu.size() != grid.N || wbar.size() != grid.N)
    throw InvalidInput("nie: field sizes do not match grid");
  DualEval e;
  e.knu = apply_window(grid, nu);
  e.denom = (opt.a + e.knu.array()).matrix();
  const double guard = opt.guard();
  for (int j = 0; j < grid.N; ++j)
    if (!(e.denom[j] > guard)) e.bad.push_back(j);
  e.feasible = e.bad.empty();
  if (e.feasible)
    e.w = ((opt.a * wbar.array() - nu.array() - u_inf * e.knu.array()) / e.denom.array()).matrix();
  return e;
}

}  // namespace

Vector dual_to_primal_w(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                        double u_inf, const NieOptions& opt) {
  DualEval e = evaluate_dual(grid, nu, wbar, u_inf, opt);
  if (!e.feasible)
    throw DomainViolation("dual_to_primal_w: convexity guard a + K nu > eps_a failed", e.bad);
  return e.w;
}

double dual_objective(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                      double u_inf, const NieOptions& opt) {
  DualEval e = evaluate_dual(grid, nu, wbar, u_inf, opt);
  if (!e.feasible) return -opt.penalty;
  return -0.5 * grid.h * (e.denom.array() * e.w.array().square()).sum();
}

Vector dual_gradient(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                     double u_inf, const NieOptions& opt) {
  DualEval e = evaluate_dual(grid, nu, wbar, u_inf, opt);
  if (!e.feasible)
    throw DomainViolation("dual_gradient: convexity guard failed", e.bad);
  const Vector rho = nie_residual(grid, e.w, u_inf).first;
  return grid.h * rho;
}

Matrix dual_hessian(const PeriodicGrid& grid, const Vector& nu, const Vector& wbar,
                    double u_inf, const NieOptions& opt) {
  DualEval e = evaluate_dual(grid, nu, wbar, u_inf, opt);
  if (!e.feasible)
    throw DomainViolation("dual_hessian: convexity guard failed", e.bad);
  const Matrix K = window_matrix(grid);
  const Vector fhat = (u_inf + e.w.array()).matrix();
  const Matrix right = Matrix::Identity(grid.N, grid.N) + fhat.asDiagonal() * K;  // I + F K
  // -h (I + K F) D (I + F K) with D = diag(1/denom); I + K F is the transpose.
  Matrix H = -grid.h * right.transpose() * e.denom.cwiseInverse().asDiagonal() * right;
  return 0.5 * (H + H.transpose());
}

SpectralReport stability_spectrum(const PeriodicGrid& grid, const Vector& wbar, double u_inf) {
  if (wbar.size() != grid.N) throw InvalidInput("stability_spectrum: field size mismatch");
  const Matrix K = window_matrix(grid);
  const Vector fbar = (u_inf + wbar.array()).matrix();
  const Matrix right = Matrix::Identity(grid.N, grid.N) + fbar.asDiagonal() * K;
  Matrix M = right.transpose() * right;  // (I + K F)(I + F K)
  M = 0.5 * (M + M.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  SpectralReport rep;
  rep.kappa = es.eigenvalues();
  int arg = 0;
  for (int i = 1; i < rep.kappa.size(); ++i)
    if (std::abs(rep.kappa[i]) < std::abs(rep.kappa[arg])) arg = i;
  rep.kappa1 = rep.kappa[arg];
  std::vector<double> low;
  for (int i = 0; i < rep.kappa.size() && low.size() < 4; ++i)
    if (std::abs(rep.kappa[i]) >= 1e-10) low.push_back(rep.kappa[i]);
  rep.kappa_low = Eigen::Map<Vector>(low.data(), static_cast<int>(low.size()));
  rep.min_sigma_c = min_continuous_spectrum(u_inf);
  return rep;
}

NieSolveResult solve_nie(const PeriodicGrid& grid, const Vector& wbar0, double u_inf,
                         const NieOptions& opt) {
  if (wbar0.size() != grid.N) throw InvalidInput("solve_nie: base state size mismatch");

  Objective obj;
  obj.n = grid.N;
  obj.penalty = opt.penalty;
  obj.eval = [&](const Vector& nu, Vector& grad) -> double {
    DualEval e = evaluate_dual(grid, nu, wbar0, u_inf, opt);
    if (!e.feasible) return opt.penalty;
    const Vector rho = nie_residual(grid, e.w, u_inf).first;
    grad = -grid.h * rho;
    return 0.5 * grid.h * (e.denom.array() * e.w.array().square()).sum();
  };

  QnResult qn = minimize(obj, Vector::Zero(grid.N), opt.grad_tol, opt.max_qn_iters);

  NieSolveResult out;
  out.nu = qn.x;
  out.qn = qn.report;
  const Vector w = dual_to_primal_w(grid, out.nu, wbar0, u_inf, opt);
  auto [rho, rho_inf] = nie_residual(grid, w, u_inf);
  out.rho = rho;
  out.rho_inf = rho_inf;
  out.converged = (qn.report.reason == QnStop::gtol);
  out.profile.x = grid.points();
  out.profile.f = (u_inf + w.array()).matrix();
  out.profile.u_inf = u_inf;
  out.profile.c = -0.5;
  return out;
}

SweepResult sweep_u_infinity(const PeriodicGrid& grid, double u_start, double u_end,
                             const Vector& wbar0, const SweepOptions& opt) {
  SweepResult sweep;
  const double dir = (u_end >= u_start) ? 1.0 : -1.0;

  Vector wbar = wbar0;
  double u = u_start;
  NieSolveResult first = solve_nie(grid, wbar, u, opt.nie);
  if (!first.converged) {
    sweep.completed = false;
    sweep.status = "initial solve failed";
    sweep.entries.push_back({u, std::move(first), std::nullopt});
    return sweep;
  }
  wbar = first.profile.w();
  sweep.entries.push_back({u, std::move(first), std::nullopt});

  // March along the ladder u_start + k * step, inserting halved sub-steps when
  // a solve fails so the ladder points themselves are always hit exactly.
  while (std::abs(u - u_end) > 1e-12) {
    double target = u + dir * opt.nie.u_inf_step;
    if (dir * (target - u_end) > 0.0) target = u_end;
    double sub = opt.nie.u_inf_step;
    bool stalled = false;
    while (std::abs(u - target) > 1e-12) {
      double u_try = u + dir * sub;
      if (dir * (u_try - target) > 0.0) u_try = target;
      NieSolveResult attempt = solve_nie(grid, wbar, u_try, opt.nie);
      if (attempt.converged) {
        wbar = attempt.profile.w();
        sweep.entries.push_back({u_try, std::move(attempt), std::nullopt});
        u = u_try;
      } else {
        sub *= 0.5;
        if (sub < opt.min_step) {
          stalled = true;
          break;
        }
      }
    }
    if (stalled) {
      sweep.completed = false;
      sweep.status = "stalled at u_inf = " + std::to_string(u);
      break;
    }
  }
  if (sweep.status.empty()) sweep.status = "completed";

  if (opt.spectra) {
    auto wanted = [&](double uv) {
      if (opt.spectra_at.empty()) return true;
      for (double t : opt.spectra_at)
        if (std::abs(t - uv) < 1e-9) return true;
      return false;
    };
    std::vector<int> todo;
    for (int i = 0; i < static_cast<int>(sweep.entries.size()); ++i)
      if (wanted(sweep.entries[i].u_inf)) todo.push_back(i);

    const int workers = std::max(1, std::min<int>(opt.threads, static_cast<int>(todo.size())));
    if (workers <= 1) {
      for (int i : todo) {
        auto& e = sweep.entries[i];
        e.spectrum = stability_spectrum(grid, e.solve.profile.w(), e.u_inf);
      }
    } else {
      std::vector<std::thread> pool;
      std::atomic<size_t> next{0};
      for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
          for (size_t k = next.fetch_add(1); k < todo.size(); k = next.fetch_add(1)) {
            auto& e = sweep.entries[todo[k]];
            e.spectrum = stability_spectrum(grid, e.solve.profile.w(), e.u_inf);
          }
        });
      }
      for (auto& th : pool) th.join();
    }
  }
  return sweep;
}

}  // namespace dualwave
