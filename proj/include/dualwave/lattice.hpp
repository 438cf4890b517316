#pragma once

#include "dualwave/types.hpp"

namespace dualwave {

enum class Boundary { periodic, fixed_ends };

struct LatticeState {
  Vector u;
  Boundary boundary = Boundary::periodic;
  double t = 0.0;
};

// Right-hand side of the lattice: du_j/dt = -(u_{j+1}^2 - u_{j-1}^2) / 4.
// Fixed-ends boundary holds the two end values (zero rate there).
Vector burgers_rhs(const LatticeState& state);

// Classical fixed-step RK4. Requires dt * max|u| < 1 on entry; throws
// DivergenceError with the step index when the state stops being finite.
LatticeState rk4_evolve(const LatticeState& state, double dt, int steps);

// True when the speed c matches no linear phase velocity u_bar * sinc(xi).
bool phase_speed_nonmatching(double c, double u_bar);

// Map a profile solving the reduced equation (speed -1/2) to the profile at
// speed c_target: u = -2 c_target f. reduce_profile is the inverse map.
WaveProfile rescale_profile(const WaveProfile& f, double c_target);
WaveProfile reduce_profile(const WaveProfile& u);

struct KdvParams {
  double u_star;  // background state, nonzero
  double gamma;   // amplitude parameter, same sign as u_star
};

// Long-wave approximate traveling wave: u* + 3 gamma sech^2(x/2 sqrt(6 gamma / u*)),
// sampled at t = 0 with speed c = u* + gamma.
WaveProfile kdv_profile(const KdvParams& params, const Vector& x);

}  // namespace dualwave
