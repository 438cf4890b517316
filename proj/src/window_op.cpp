#include "dualwave/window_op.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <string>

namespace dualwave {

namespace {

// First column of the circulant: trapezoid weights of the window [-1, 1]
// folded onto the periodic grid.
Vector stencil_column(const PeriodicGrid& g) {
  Vector c = Vector::Zero(g.N);
  const int r = g.unit;
  for (int d = -r; d <= r; ++d) {
    const double w = (std::abs(d) == r) ? 0.5 * g.h : g.h;
    c[((d % g.N) + g.N) % g.N] += w;
  }
  return c;
}

void check_size(const PeriodicGrid& g, const Vector& v, const char* who) {
  if (v.size() != g.N) throw InvalidInput(std::string(who) + ": sample count does not match grid");
}

}  // namespace

Vector window_symbol(const PeriodicGrid& g) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec;
  Vector col = stencil_column(g);
  fft.fwd(spec, col);
  return spec.real();
}

Vector apply_window(const PeriodicGrid& g, const Vector& v) {
  check_size(g, v, "apply_window");
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec;
  fft.fwd(spec, v);
  const Vector sym = window_symbol(g);
  for (int k = 0; k < g.N; ++k) spec[k] *= sym[k];
  Vector out;
  fft.inv(out, spec);
  return out;
}

Matrix window_matrix(const PeriodicGrid& g) {
  const Vector col = stencil_column(g);
  Matrix K(g.N, g.N);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) K(i, j) = col[((i - j) % g.N + g.N) % g.N];
  return K;
}

Vector apply_window_zeropad(const PeriodicGrid& g, const Vector& v) {
  check_size(g, v, "apply_window_zeropad");
  const int r = g.unit;
  Vector out = Vector::Zero(g.N);
  for (int j = 0; j < g.N; ++j) {
    double acc = 0.0;
    for (int d = -r; d <= r; ++d) {
      const int k = j + d;
      if (k < 0 || k >= g.N) continue;
      acc += (std::abs(d) == r ? 0.5 : 1.0) * v[k];
    }
    out[j] = g.h * acc;
  }
  return out;
}

SincMin min_sinc() {
  // Stationary point of sinc in (pi, 2 pi): xi cos(xi) = sin(xi).
  double xi = 4.5;
  for (int it = 0; it < 60; ++it) {
    const double phi = xi * std::cos(xi) - std::sin(xi);
    const double dphi = -xi * std::sin(xi);
    const double step = phi / dphi;
    xi -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return {xi, -2.0 * std::sin(xi) / xi};
}

bool is_invertible(double u_inf, double L) {
  if (u_inf == 0.0) return true;
  if (std::isinf(L)) {
    // Range of the symbol 2 sinc over the line is [-sigma0, 2].
    const double lo = -min_sinc().sigma0;
    const double s0 = -1.0 / u_inf;
    return !(s0 >= lo && s0 <= 2.0);
  }
  if (!(L > 0.0)) throw InvalidInput("is_invertible: L must be positive or infinite");
  // Beyond k_max, |2 u sinc(k pi / L)| < 1 since |sinc(xi)| <= 1/|xi|.
  const int k_max = static_cast<int>(std::ceil(2.0 * std::abs(u_inf) * L / M_PI)) + 1;
  for (int k = 0; k <= k_max; ++k) {
    const double xi = k * M_PI / L;
    const double s = (k == 0) ? 1.0 : std::sin(xi) / xi;
    if (std::abs(1.0 + 2.0 * u_inf * s) < 1e-12) return false;
  }
  return true;
}

double min_continuous_spectrum(double u_inf) {
  const double sigma0 = min_sinc().sigma0;
  if (u_inf > 0.0) {
    const double m = 1.0 - sigma0 * u_inf;
    return m * m;
  }
  const double m = 1.0 + 2.0 * u_inf;
  return m * m;
}

Vector solve_id_plus_u_window(const PeriodicGrid& g, const Vector& rhs, double u_inf) {
  check_size(g, rhs, "solve_id_plus_u_window");
  const Vector sym = window_symbol(g);
  for (int k = 0; k < g.N; ++k) {
    if (std::abs(1.0 + u_inf * sym[k]) < 1e-10)
      throw SingularOperator("solve_id_plus_u_window: resonant mode k=" + std::to_string(k), k);
  }
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec;
  fft.fwd(spec, rhs);
  for (int k = 0; k < g.N; ++k) spec[k] /= (1.0 + u_inf * sym[k]);
  Vector out;
  fft.inv(out, spec);
  return out;
}

}  // namespace dualwave
