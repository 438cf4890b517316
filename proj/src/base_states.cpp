#include "dualwave/base_states.hpp"

#include "dualwave/interp.hpp"
#include "dualwave/io.hpp"

#include <cmath>
#include <memory>

namespace dualwave {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double standard_gaussian(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

}  // namespace

PvResult pv_reference(double L, int N) {
  PeriodicGrid grid(L, N);
  Vector g0(N);
  for (int j = 0; j < N; ++j) g0[j] = standard_gaussian(grid.x(j));
  PvOptions opt;
  return pv_basic(grid, g0, opt);
}

std::function<double(double)> mollify(std::function<double(double)> f, double sigma) {
  // Trapezoid over +-5 sigma; weights normalized so constants are preserved.
  const int n = 81;
  auto weights = std::make_shared<std::vector<std::pair<double, double>>>();
  const double lo = -5.0 * sigma, step = 10.0 * sigma / (n - 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = lo + i * step;
    double w = std::exp(-0.5 * t * t / (sigma * sigma));
    if (i == 0 || i == n - 1) w *= 0.5;
    weights->push_back({t, w});
    total += w;
  }
  for (auto& p : *weights) p.second /= total;
  return [f = std::move(f), weights](double x) {
    double acc = 0.0;
    for (const auto& [t, w] : *weights) acc += w * f(x - t);
    return acc;
  };
}

std::function<double(double)> make_base_function(const BaseSpec& spec, double pv_L,
                                                 int pv_per_unit) {
  if (std::holds_alternative<GaussianSpec>(spec)) {
    const double gamma = std::get<GaussianSpec>(spec).gamma;
    return [gamma](double x) { return gamma * standard_gaussian(x); };
  }
  if (std::holds_alternative<LinearSpec>(spec)) {
    const double s = std::get<LinearSpec>(spec).slope;
    return [s](double x) { return s * x; };
  }
  if (std::holds_alternative<SineSpec>(spec)) {
    const double omega = std::get<SineSpec>(spec).omega;
    auto raw = [omega](double x) { return (x > -kTwoPi && x < kTwoPi) ? std::sin(omega * x) : 0.0; };
    return mollify(raw, 0.2);
  }
  if (std::holds_alternative<HatSpec>(spec)) {
    const double h = std::get<HatSpec>(spec).h;
    auto raw = [h](double x) {
      if (x > 0.0 && x <= 5.0) return -(x - 5.0) * h;
      if (x > -5.0 && x <= 0.0) return (x + 5.0) * h;
      return 0.0;
    };
    return mollify(raw, 0.2);
  }
  if (std::holds_alternative<FileSpec>(spec)) {
    const WaveProfile p = read_profile_csv(std::get<FileSpec>(spec).path);
    const double h = p.x[1] - p.x[0];
    auto interp = std::make_shared<CubicInterp>(p.x[0], h, p.f, CubicInterp::OutOfRange::zero);
    return [interp](double x) { return (*interp)(x); };
  }

  // PV-based families: the converged hump with f = -g. The profile is smooth
  // and periodic on its own grid, so trigonometric interpolation keeps the
  // base state at spectral accuracy.
  double alpha = 1.0, shift = 0.0;
  if (std::holds_alternative<ScaledPvSpec>(spec)) {
    alpha = std::get<ScaledPvSpec>(spec).alpha;
    shift = std::get<ScaledPvSpec>(spec).shift;
  }
  const int pv_N = static_cast<int>(std::llround(2.0 * pv_L * pv_per_unit));
  const PvResult pv = pv_reference(pv_L, pv_N);
  auto interp = std::make_shared<TrigInterp>(-pv_L, 2.0 * pv_L, Vector(-pv.g));
  return [interp, alpha, shift](double x) { return alpha * (*interp)(x) + shift; };
}

std::string base_spec_name(const BaseSpec& spec) {
  if (std::holds_alternative<PvSpec>(spec)) return "pv";
  if (std::holds_alternative<ScaledPvSpec>(spec)) {
    const auto& s = std::get<ScaledPvSpec>(spec);
    return "scaled_pv(alpha=" + std::to_string(s.alpha) + ",shift=" + std::to_string(s.shift) + ")";
  }
  if (std::holds_alternative<GaussianSpec>(spec))
    return "gaussian(gamma=" + std::to_string(std::get<GaussianSpec>(spec).gamma) + ")";
  if (std::holds_alternative<SineSpec>(spec))
    return "sine(omega=" + std::to_string(std::get<SineSpec>(spec).omega) + ")";
  if (std::holds_alternative<HatSpec>(spec))
    return "hat(h=" + std::to_string(std::get<HatSpec>(spec).h) + ")";
  if (std::holds_alternative<LinearSpec>(spec))
    return "linear(slope=" + std::to_string(std::get<LinearSpec>(spec).slope) + ")";
  return "file(" + std::get<FileSpec>(spec).path + ")";
}

}  // namespace dualwave
