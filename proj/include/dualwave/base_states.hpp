#pragma once

#include "dualwave/petviashvili.hpp"
#include "dualwave/types.hpp"

#include <functional>
#include <string>
#include <variant>

namespace dualwave {

// Base-state families used to seed the dual solvers.
struct PvSpec {};
struct ScaledPvSpec {
  double alpha = 1.0;
  double shift = 0.0;
};
struct GaussianSpec {
  double gamma = 1.0;
};
struct SineSpec {
  double omega = 1.0;
};
struct HatSpec {
  double h = -0.4;
};
struct LinearSpec {
  double slope = -0.25;
};
struct FileSpec {
  std::string path;
};

using BaseSpec =
    std::variant<PvSpec, ScaledPvSpec, GaussianSpec, SineSpec, HatSpec, LinearSpec, FileSpec>;

// Reference fixed-point run seeded with the standard Gaussian.
PvResult pv_reference(double L = 25.0, int N = 1000);

// Gaussian mollification, used to smooth the kinked families while keeping
// their shape (fixed-width quadrature, deterministic).
std::function<double(double)> mollify(std::function<double(double)> f, double sigma);

// Callable f(x) for a base-state family. Kinked families (sine, hat) are
// mollified with sigma = 0.2; the fixed-point families draw on a reference
// run over (-pv_L, pv_L) with pv_per_unit samples per unit length (fine by
// default, so the O(h^2) error of the reference grid stays below the dual
// solver's own resolution).
std::function<double(double)> make_base_function(const BaseSpec& spec, double pv_L = 25.0,
                                                 int pv_per_unit = 80);

std::string base_spec_name(const BaseSpec& spec);

}  // namespace dualwave
