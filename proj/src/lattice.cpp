#include "dualwave/lattice.hpp"

#include "dualwave/window_op.hpp"

#include <cmath>

namespace dualwave {

namespace {

Vector rhs_of(const Vector& u, Boundary boundary) {
  const int n = static_cast<int>(u.size());
  Vector r(n);
  if (boundary == Boundary::periodic) {
    for (int j = 0; j < n; ++j) {
      const double up = u[(j + 1) % n];
      const double um = u[(j + n - 1) % n];
      r[j] = -0.25 * (up * up - um * um);
    }
  } else {
    r[0] = 0.0;
    r[n - 1] = 0.0;
    for (int j = 1; j < n - 1; ++j) r[j] = -0.25 * (u[j + 1] * u[j + 1] - u[j - 1] * u[j - 1]);
  }
  return r;
}

}  // namespace

Vector burgers_rhs(const LatticeState& state) {
  if (state.u.size() < 3) throw InvalidInput("burgers_rhs: need at least 3 sites");
  if (!state.u.allFinite()) throw InvalidInput("burgers_rhs: state has non-finite values");
  return rhs_of(state.u, state.boundary);
}

LatticeState rk4_evolve(const LatticeState& state, double dt, int steps) {
  if (!(dt > 0.0)) throw InvalidInput("rk4_evolve: dt must be positive");
  if (steps < 0) throw InvalidInput("rk4_evolve: steps must be nonnegative");
  if (state.u.size() < 3) throw InvalidInput("rk4_evolve: need at least 3 sites");
  if (dt * state.u.cwiseAbs().maxCoeff() >= 1.0)
    throw InvalidInput("rk4_evolve: dt too large for max|u|");

  LatticeState s = state;
  for (int n = 0; n < steps; ++n) {
    const Vector k1 = rhs_of(s.u, s.boundary);
    const Vector k2 = rhs_of(s.u + 0.5 * dt * k1, s.boundary);
    const Vector k3 = rhs_of(s.u + 0.5 * dt * k2, s.boundary);
    const Vector k4 = rhs_of(s.u + dt * k3, s.boundary);
    s.u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s.t += dt;
    if (!s.u.allFinite()) throw DivergenceError("rk4_evolve: state diverged", n);
  }
  return s;
}

bool phase_speed_nonmatching(double c, double u_bar) {
  if (u_bar == 0.0) return c != 0.0;
  // sinc over the line ranges over [sinc(xi_star), 1].
  const double lo = -0.5 * min_sinc().sigma0;
  const double ratio = c / u_bar;
  return ratio < lo || ratio > 1.0;
}

WaveProfile rescale_profile(const WaveProfile& f, double c_target) {
  if (c_target == 0.0) throw InvalidInput("rescale_profile: target speed must be nonzero");
  WaveProfile out = f;
  out.f = (-2.0 * c_target) * f.f;
  out.u_inf = -2.0 * c_target * f.u_inf;
  out.c = c_target;
  return out;
}

WaveProfile reduce_profile(const WaveProfile& u) {
  if (u.c == 0.0) throw InvalidInput("reduce_profile: profile speed must be nonzero");
  WaveProfile out = u;
  out.f = u.f / (-2.0 * u.c);
  out.u_inf = u.u_inf / (-2.0 * u.c);
  out.c = -0.5;
  return out;
}

WaveProfile kdv_profile(const KdvParams& p, const Vector& x) {
  if (p.u_star == 0.0 || !(p.gamma / p.u_star > 0.0))
    throw InvalidInput("kdv_profile: need u_star != 0 and gamma/u_star > 0");
  const double b = 0.5 * std::sqrt(6.0 * p.gamma / p.u_star);
  WaveProfile out;
  out.x = x;
  out.f.resize(x.size());
  for (int j = 0; j < x.size(); ++j) {
    const double sech = 1.0 / std::cosh(b * x[j]);
    out.f[j] = p.u_star + 3.0 * p.gamma * sech * sech;
  }
  out.u_inf = p.u_star;
  out.c = p.u_star + p.gamma;
  return out;
}

}  // namespace dualwave
