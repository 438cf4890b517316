#include "dualwave/verify.hpp"

#include "dualwave/window_op.hpp"

#include <cmath>
#include <vector>

namespace dualwave {

double fd_residual(const WaveProfile& f, double dx, double L) {
  const int n = static_cast<int>(f.x.size());
  if (n < 5) throw InvalidInput("fd_residual: too few nodes");
  const double inv = 1.0 / dx;
  const int r = static_cast<int>(std::llround(inv));
  if (r < 1 || std::abs(inv - r) > 1e-9 * inv)
    throw InvalidInput("fd_residual: 1/dx must be a positive integer");
  for (int i = 1; i < n; ++i)
    if (std::abs(f.x[i] - f.x[i - 1] - dx) > 1e-9 * dx)
      throw InvalidInput("fd_residual: nodes are not uniform with spacing dx");
  if (!(L > 2.5 + dx)) throw InvalidInput("fd_residual: interior window is empty");

  const double lo = -L + 2.5, hi = L - 2.5;
  double worst = 0.0;
  bool seen = false;
  for (int a = 0; a < n; ++a) {
    const double x = f.x[a];
    if (x <= lo || x >= hi) continue;
    if (a - r < 0 || a + r >= n || a - 1 < 0 || a + 1 >= n)
      throw InvalidInput("fd_residual: shifted nodes missing from the mesh");
    const double err = (f.f[a + 1] - f.f[a - 1]) / (2.0 * dx) +
                       0.5 * (f.f[a + r] * f.f[a + r] - f.f[a - r] * f.f[a - r]);
    worst = std::max(worst, std::abs(err));
    seen = true;
  }
  if (!seen) throw InvalidInput("fd_residual: no nodes inside the interior window");
  return worst;
}

double refinement_diff(const WaveProfile& f_m, const WaveProfile& f_2m, const WaveProfile& f_ref) {
  const int nc = static_cast<int>(f_m.x.size());
  const int nf = static_cast<int>(f_2m.x.size());
  if (nf != 2 * (nc - 1) + 1)
    throw InvalidInput("refinement_diff: fine mesh is not a doubling of the coarse one");
  const double rms = std::sqrt(f_ref.f.squaredNorm() / static_cast<double>(f_ref.f.size()));
  if (!(rms > 0.0)) throw InvalidInput("refinement_diff: reference RMS is zero");

  double worst = 0.0;
  for (int i = 0; i < nc; ++i) {
    const int j = 2 * i;
    if (std::abs(f_m.x[i] - f_2m.x[j]) > 1e-9 * (1.0 + std::abs(f_m.x[i])))
      throw InvalidInput("refinement_diff: coarse nodes are not a subset of the fine nodes");
    worst = std::max(worst, std::abs(f_2m.f[j] - f_m.f[i]));
  }
  return 100.0 * worst / rms;
}

std::pair<Vector, double> nie_residual(const PeriodicGrid& grid, const Vector& w, double u_inf) {
  if (w.size() != grid.N) throw InvalidInput("nie_residual: sample count does not match grid");
  const Vector rho =
      w + apply_window(grid, (u_inf * w.array() + 0.5 * w.array().square()).matrix());
  return {rho, rho.lpNorm<Eigen::Infinity>()};
}

double tail_wavenumber(const WaveProfile& w, double lo, double hi) {
  std::vector<double> zeros;
  const Vector vals = w.w();
  // Crossings are only counted while the envelope is still resolved; far
  // below the window's own scale the samples are solver noise.
  double sup = 0.0;
  for (int i = 0; i < w.x.size(); ++i)
    if (w.x[i] >= lo && w.x[i] <= hi) sup = std::max(sup, std::abs(vals[i]));
  const double floor = std::max(1e-4 * sup, 1e-12);
  for (int i = 0; i + 1 < w.x.size(); ++i) {
    if (w.x[i] < lo || w.x[i + 1] > hi) continue;
    const double a = vals[i], b = vals[i + 1];
    if (std::max(std::abs(a), std::abs(b)) < floor) continue;
    if (a == 0.0) { zeros.push_back(w.x[i]); continue; }
    if (a * b < 0.0) zeros.push_back(w.x[i] - a * (w.x[i + 1] - w.x[i]) / (b - a));
  }
  if (zeros.size() < 6)
    throw TooFewCrossings("tail_wavenumber: fewer than 6 sign changes in the window");
  double spacing = 0.0;
  for (size_t i = 1; i < zeros.size(); ++i) spacing += zeros[i] - zeros[i - 1];
  spacing /= static_cast<double>(zeros.size() - 1);
  return M_PI / spacing;
}

GradientCheck gradient_check(const Objective& obj, const Vector& x, double step) {
  GradientCheck out;
  Vector g(obj.n), dummy(obj.n);
  const double f0 = obj.eval(x, g);
  if (f0 >= obj.penalty) throw InvalidInput("gradient_check: base point is infeasible");
  const double scale = std::max(g.lpNorm<Eigen::Infinity>(), 1e-300);
  for (int i = 0; i < obj.n; ++i) {
    Vector xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    const double fp = obj.eval(xp, dummy);
    const double fm = obj.eval(xm, dummy);
    if (fp >= obj.penalty || fm >= obj.penalty) {
      out.hit_penalty = true;
      continue;
    }
    const double fd = (fp - fm) / (2.0 * step);
    out.max_rel_err = std::max(out.max_rel_err, std::abs(fd - g[i]) / scale);
  }
  return out;
}

double kdv_lattice_residual(const KdvParams& p, double x_max, double dx) {
  if (!(x_max > 0.0) || !(dx > 0.0)) throw InvalidInput("kdv_lattice_residual: bad scan range");
  const double b = 0.5 * std::sqrt(6.0 * p.gamma / p.u_star);
  const double c = p.u_star + p.gamma;
  auto prof = [&](double x) {
    const double s = 1.0 / std::cosh(b * x);
    return p.u_star + 3.0 * p.gamma * s * s;
  };
  auto dprof = [&](double x) {
    const double s = 1.0 / std::cosh(b * x);
    return -6.0 * p.gamma * b * s * s * std::tanh(b * x);
  };
  double worst = 0.0;
  for (double x = -x_max; x <= x_max; x += dx) {
    const double fp = prof(x + 1.0), fm = prof(x - 1.0);
    worst = std::max(worst, std::abs(-c * dprof(x) + 0.25 * (fp * fp - fm * fm)));
  }
  return worst;
}

}  // namespace dualwave
