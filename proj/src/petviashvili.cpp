#include "dualwave/petviashvili.hpp"

#include "dualwave/window_op.hpp"

#include <cmath>

namespace dualwave {

namespace {

double nie_residual_inf(const PeriodicGrid& grid, const Vector& g, double u_inf) {
  const Vector w = -g;
  const Vector rho = w + apply_window(grid, (u_inf * w.array() + 0.5 * w.array().square()).matrix());
  return rho.lpNorm<Eigen::Infinity>();
}

PvResult pv_iterate(const PeriodicGrid& grid, const Vector& g0, double u_inf, bool precondition,
                    const PvOptions& opt) {
  if (g0.size() != grid.N) throw InvalidInput("petviashvili: seed size does not match grid");
  if (!(opt.q > 1.0 && opt.q <= 2.0)) throw InvalidInput("petviashvili: q must lie in (1, 2]");
  if (precondition && !is_invertible(u_inf, grid.L))
    throw InvalidInput("petviashvili: I + u_inf K is not invertible on this domain");

  PvResult res;
  res.g = g0;
  const double res0 = nie_residual_inf(grid, res.g, u_inf);
  res.residual_history.push_back(res0);

  for (int n = 1; n <= opt.max_iters; ++n) {
    const Vector g2 = res.g.array().square();
    Vector gt = precondition
                    ? solve_id_plus_u_window(grid, apply_window(grid, 0.5 * g2), u_inf)
                    : Vector(0.5 * apply_window(grid, g2));
    const double num = grid.integrate(res.g);
    const double den = grid.integrate(gt);
    if (std::abs(den) < 1e-300)
      throw DegenerateIterate("petviashvili: integral of the updated iterate vanished");
    const double c = num / den;
    if (!(c > 0.0))
      throw DegenerateIterate("petviashvili: amplitude factor is not positive");
    res.g = std::pow(c, opt.q) * gt;
    res.c_history.push_back(c);
    res.iterations = n;

    const double r = nie_residual_inf(grid, res.g, u_inf);
    res.residual_history.push_back(r);

    if (opt.res_tol > 0.0 && r < opt.res_tol) {
      res.converged = true;
      res.status = "residual tolerance reached";
      return res;
    }
    if (opt.tol_c > 0.0 && std::abs(c - 1.0) < opt.tol_c) {
      res.converged = true;
      res.status = "amplitude factor converged";
      return res;
    }
    if (r > 10.0 * res0 && res0 > 0.0) {
      res.unstable = true;
      res.status = "unstable: residual grew past 10x the seed at iteration " + std::to_string(n);
      return res;
    }
  }
  if (res.residual_history.back() > res0) {
    res.unstable = true;
    res.status = "failed to improve the seed residual";
  } else {
    res.status = "max iterations reached";
  }
  return res;
}

}  // namespace

PvResult pv_basic(const PeriodicGrid& grid, const Vector& g0, const PvOptions& opt) {
  return pv_iterate(grid, g0, 0.0, false, opt);
}

PvResult pv_nie(const PeriodicGrid& grid, const Vector& w0, double u_inf, const PvOptions& opt) {
  return pv_iterate(grid, -w0, u_inf, true, opt);
}

}  // namespace dualwave
