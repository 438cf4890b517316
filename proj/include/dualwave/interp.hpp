#pragma once

#include "dualwave/types.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>

namespace dualwave {

// Catmull-Rom cubic interpolation of uniformly sampled data.
struct CubicInterp {
  enum class OutOfRange { clamp, zero, wrap };

  double x0 = 0.0;
  double h = 1.0;
  Vector y;
  OutOfRange oob = OutOfRange::clamp;

  CubicInterp() = default;
  CubicInterp(double x0_, double h_, Vector y_, OutOfRange o = OutOfRange::clamp)
      : x0(x0_), h(h_), y(std::move(y_)), oob(o) {
    if (h <= 0.0 || y.size() < 4) throw InvalidInput("CubicInterp: need h > 0 and at least 4 samples");
  }

  double operator()(double x) const {
    const int n = static_cast<int>(y.size());
    double t = (x - x0) / h;
    if (oob == OutOfRange::zero && (t < 0.0 || t > n - 1)) return 0.0;
    int i = static_cast<int>(std::floor(t));
    double s = t - i;
    auto at = [&](int k) -> double {
      if (oob == OutOfRange::wrap) return y[((k % n) + n) % n];
      return y[k < 0 ? 0 : (k >= n ? n - 1 : k)];
    };
    if (oob != OutOfRange::wrap) {
      if (i < 0) { i = 0; s = 0.0; }
      if (i > n - 2) { i = n - 2; s = 1.0; }
    }
    const double y0 = at(i - 1), y1 = at(i), y2 = at(i + 1), y3 = at(i + 2);
    return 0.5 * (2.0 * y1 + s * (-y0 + y2) + s * s * (2.0 * y0 - 5.0 * y1 + 4.0 * y2 - y3) +
                  s * s * s * (-y0 + 3.0 * y1 - 3.0 * y2 + y3));
  }
};

// Trigonometric interpolation of smooth periodic samples on a uniform grid:
// spectrally accurate, O(N) per evaluation.
struct TrigInterp {
  double x0 = 0.0;
  double period = 1.0;
  Eigen::VectorXcd coef;  // DFT of the samples divided by N

  TrigInterp() = default;
  TrigInterp(double x0_, double period_, const Vector& samples) : x0(x0_), period(period_) {
    if (period <= 0.0 || samples.size() < 4)
      throw InvalidInput("TrigInterp: need a positive period and at least 4 samples");
    Eigen::FFT<double> fft;
    fft.fwd(coef, samples);
    coef /= static_cast<double>(samples.size());
  }

  double operator()(double x) const {
    const int n = static_cast<int>(coef.size());
    const double theta = 2.0 * M_PI * (x - x0) / period;
    const std::complex<double> eik(std::cos(theta), std::sin(theta));
    double acc = coef[0].real();
    std::complex<double> z = eik;
    const int half = (n - 1) / 2;
    for (int k = 1; k <= half; ++k) {
      acc += 2.0 * (coef[k] * z).real();
      z *= eik;
    }
    if (n % 2 == 0) acc += (coef[n / 2] * z).real();  // Nyquist mode, cosine only
    return acc;
  }
};

}  // namespace dualwave
