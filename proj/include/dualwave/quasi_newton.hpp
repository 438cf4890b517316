#pragma once

#include "dualwave/types.hpp"

#include <functional>

namespace dualwave {

// Value-and-gradient oracle. `eval` returns the objective value and fills the
// gradient; a returned value >= `penalty` marks the point as infeasible and
// the gradient may be left untouched there.
struct Objective {
  int n = 0;
  double penalty = 1e30;
  std::function<double(const Vector&, Vector&)> eval;
};

enum class QnStop { gtol, max_iters, line_search_failure };

struct QnReport {
  QnStop reason = QnStop::max_iters;
  int iterations = 0;
  int evaluations = 0;
  double grad_inf_norm = 0.0;
};

struct QnResult {
  Vector x;
  double value = 0.0;
  QnReport report;
};

// BFGS with dense inverse-Hessian updates and Armijo backtracking. Trial
// points in the penalty region are never accepted; the step halves until a
// feasible decrease is found or the line search gives up. Secant updates are
// skipped when the curvature condition s.y > 1e-12 |s||y| fails.
QnResult minimize(const Objective& obj, const Vector& x0, double gtol, int max_iters);

}  // namespace dualwave
