#include "dualwave/quasi_newton.hpp"

namespace dualwave {

QnResult minimize(const Objective& obj, const Vector& x0, double gtol, int max_iters) {
  if (obj.n <= 0 || !obj.eval) throw InvalidInput("minimize: objective not set up");
  if (x0.size() != obj.n) throw InvalidInput("minimize: start point has wrong dimension");

  QnResult res;
  Vector x = x0;
  Vector g(obj.n);
  double fx = obj.eval(x, g);
  int evals = 1;
  if (fx >= obj.penalty) throw InvalidInput("minimize: start point is infeasible");

  Matrix H = Matrix::Identity(obj.n, obj.n);
  bool first_update = true;
  constexpr double armijo_c1 = 1e-4;

  auto finish = [&](QnStop reason, int iters) {
    res.x = x;
    res.value = fx;
    res.report.reason = reason;
    res.report.iterations = iters;
    res.report.evaluations = evals;
    res.report.grad_inf_norm = g.lpNorm<Eigen::Infinity>();
    return res;
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() <= gtol) return finish(QnStop::gtol, iter);

    Vector d = -(H * g);
    double gd = g.dot(d);
    if (!(gd < 0.0)) {
      // Curvature went bad numerically; fall back to steepest descent.
      H.setIdentity();
      d = -g;
      gd = -g.squaredNorm();
    }

    double alpha = 1.0;
    bool accepted = false;
    Vector xt(obj.n), gt(obj.n);
    double ft = 0.0;
    for (int ls = 0; ls < 60; ++ls) {
      xt = x + alpha * d;
      ft = obj.eval(xt, gt);
      ++evals;
      if (ft < obj.penalty && ft <= fx + armijo_c1 * alpha * gd) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return finish(QnStop::line_search_failure, iter);

    const Vector s = xt - x;
    const Vector y = gt - g;
    x = xt;
    fx = ft;
    g = gt;

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (first_update) {
        H = (sy / y.squaredNorm()) * Matrix::Identity(obj.n, obj.n);
        first_update = false;
      }
      const double rho = 1.0 / sy;
      const Vector Hy = H * y;
      const double yHy = y.dot(Hy);
      H.noalias() += rho * ((1.0 + rho * yHy) * (s * s.transpose()));
      H.noalias() -= rho * (s * Hy.transpose());
      H.noalias() -= rho * (Hy * s.transpose());
    }
  }
  return finish(g.lpNorm<Eigen::Infinity>() <= gtol ? QnStop::gtol : QnStop::max_iters, max_iters);
}

}  // namespace dualwave
