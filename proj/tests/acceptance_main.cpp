// Acceptance suite: end-to-end checks of the solver stack against the pinned
// regression targets. One pass/fail line per criterion; the exit code is the
// number of failures.

#include "dualwave/base_states.hpp"
#include "dualwave/dde.hpp"
#include "dualwave/lattice.hpp"
#include "dualwave/nie.hpp"
#include "dualwave/petviashvili.hpp"
#include "dualwave/quasi_newton.hpp"
#include "dualwave/verify.hpp"
#include "dualwave/window_op.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dualwave;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  std::ostringstream msg;
  bool pass = true;
  template <typename T>
  void expect(bool ok, const std::string& label, T value) {
    if (!ok) pass = false;
    msg << label << "=" << value << (ok ? " " : " [BAD] ");
  }
  Outcome done() const { return {pass, msg.str()}; }
};

// ---- shared fixtures, built lazily ----------------------------------------

const PvResult& pv_baseline() {
  static PvResult pv = pv_reference(25.0, 1000);
  return pv;
}

struct SweepFixture {
  SweepResult neg;
  SweepResult pos;
  std::map<double, const SweepEntry*> at;

  SweepFixture() {
    PeriodicGrid grid(25.0, 1000);
    SweepOptions opt;
    opt.spectra = true;
    opt.spectra_at = {-0.45, -0.40, -0.30, -0.20, -0.10};
    const Vector wbar0 = -pv_baseline().g;
    neg = sweep_u_infinity(grid, 0.0, -0.45, wbar0, opt);
    opt.spectra_at = {0.0, 0.50, 1.00, 1.50, 2.00};
    pos = sweep_u_infinity(grid, 0.0, 2.0, wbar0, opt);
    for (const auto& e : neg.entries) index(e);
    for (const auto& e : pos.entries) index(e);
  }
  void index(const SweepEntry& e) {
    for (double u : {-0.45, -0.4, -0.3, -0.2, -0.1, 0.0, 0.5, 0.7, 1.0, 1.5, 2.0})
      if (std::abs(e.u_inf - u) < 1e-9) at[u] = &e;
  }
};

const SweepFixture& sweeps() {
  static SweepFixture f;
  return f;
}

struct DdeLadder {
  std::vector<int> meshes{200, 400, 800, 1600, 3200, 6400};
  std::vector<DdeSolve> solves;
  DdeLadder() {
    const auto fbar = make_base_function(ScaledPvSpec{2.0, 0.0});
    DdeOptions opt;  // a = 1e6, T = 0.95, tol = 1e-12
    for (int m : meshes) {
      FemMesh mesh(8.0, m);
      solves.push_back(solve_dde(mesh, make_base_state(mesh, fbar, "2pv"), opt));
    }
  }
};

const DdeLadder& ladder() {
  static DdeLadder l;
  return l;
}

// ---- criteria ---------------------------------------------------------------

Outcome c1_pv_baseline() {
  Check c;
  const PvResult& pv = pv_baseline();
  PeriodicGrid grid(25.0, 1000);
  c.expect(pv.converged, "converged", pv.converged);
  c.expect(pv.iterations <= 60, "iterations", pv.iterations);
  const double cerr = std::abs(pv.c_history.back() - 1.0);
  c.expect(cerr < 1e-6, "|C-1|", cerr);
  const double res = nie_residual(grid, Vector(-pv.g), 0.0).second;
  c.expect(res < 1e-6, "nie_residual", res);
  return c.done();
}

Outcome c2_sweep_residuals() {
  Check c;
  c.expect(sweeps().neg.completed, "neg_completed", sweeps().neg.completed);
  c.expect(sweeps().pos.completed, "pos_completed", sweeps().pos.completed);
  for (double u : {-0.45, -0.4, -0.3, -0.2, -0.1, 0.0, 0.5, 1.0, 1.5, 2.0}) {
    const auto it = sweeps().at.find(u);
    if (it == sweeps().at.end()) {
      c.expect(false, "u=" + std::to_string(u), "missing");
      continue;
    }
    std::ostringstream lab;
    lab << "rho(" << u << ")";
    c.expect(it->second->solve.rho_inf < 1e-7, lab.str(), it->second->solve.rho_inf);
  }
  return c.done();
}

Outcome c3_spectral_table() {
  // Regression targets: lowest four non-negligible eigenvalues of the scaled
  // negative second variation, and the bottom of the continuous spectrum.
  static const std::map<double, std::array<double, 5>> table = {
      {-0.45, {0.00525, 0.01008, 0.01017, 0.01155, 0.01000}},
      {-0.40, {0.01940, 0.03960, 0.04027, 0.04210, 0.04000}},
      {-0.30, {0.06512, 0.15327, 0.16035, 0.16209, 0.16000}},
      {-0.20, {0.12258, 0.32787, 0.36029, 0.36172, 0.36000}},
      {-0.10, {0.18357, 0.54470, 0.63819, 0.64042, 0.64000}},
      {0.00, {0.24398, 0.64190, 0.64190, 0.78068, 1.00000}},
      {0.50, {0.48865, 0.55764, 0.55764, 0.61489, 0.61272}},
      {1.00, {0.32294, 0.32296, 0.32611, 0.32613, 0.31983}},
      {1.50, {0.12421, 0.12423, 0.12718, 0.12721, 0.12131}},
      {2.00, {0.01867, 0.01869, 0.02025, 0.02031, 0.01718}},
  };
  Check c;
  double worst_kappa = 0.0, worst_k1 = 0.0, worst_sc = 0.0;
  for (const auto& [u, row] : table) {
    const auto it = sweeps().at.find(u);
    if (it == sweeps().at.end() || !it->second->spectrum) {
      c.expect(false, "spectrum(" + std::to_string(u) + ")", "missing");
      continue;
    }
    const SpectralReport& sp = *it->second->spectrum;
    for (int i = 0; i < 4; ++i)
      worst_kappa = std::max(worst_kappa, std::abs(sp.kappa_low[i] - row[i]));
    worst_k1 = std::max(worst_k1, std::abs(sp.kappa1));
    worst_sc = std::max(worst_sc, std::abs(min_continuous_spectrum(u) - row[4]));
  }
  c.expect(worst_kappa <= 2e-3, "max|kappa-table|", worst_kappa);
  c.expect(worst_k1 < 1e-10, "max|kappa1|", worst_k1);
  c.expect(worst_sc <= 1e-5, "max|min_sigma_c-table|", worst_sc);
  return c.done();
}

Outcome c4_tail_frequency() {
  Check c;
  const auto it = sweeps().at.find(1.0);
  if (it == sweeps().at.end()) return {false, "u=1 solution missing"};
  const double k = tail_wavenumber(it->second->solve.profile, 5.0, 20.0);
  const double xi = 4.4934;
  c.expect(k >= 0.95 * xi && k <= 1.05 * xi, "tail_wavenumber", k);
  return c.done();
}

Outcome c5_pv_dichotomy() {
  Check c;
  PeriodicGrid grid(25.0, 1000);
  PvOptions opt;
  opt.tol_c = 0.0;
  opt.res_tol = 1e-13;
  opt.max_iters = 200;
  for (double u : {-0.45, 0.0, 0.5, 0.7}) {
    const auto it = sweeps().at.find(u);
    if (it == sweeps().at.end()) {
      c.expect(false, "seed(" + std::to_string(u) + ")", "missing");
      continue;
    }
    const PvResult r = pv_nie(grid, it->second->solve.profile.w(), u, opt);
    std::ostringstream lab;
    lab << "res(" << u << ")";
    c.expect(r.converged && r.residual_history.back() < 1e-12, lab.str(),
             r.residual_history.back());
  }
  for (double u : {1.0, 1.5, 2.0}) {
    const auto it = sweeps().at.find(u);
    if (it == sweeps().at.end()) {
      c.expect(false, "seed(" + std::to_string(u) + ")", "missing");
      continue;
    }
    const PvResult r = pv_nie(grid, it->second->solve.profile.w(), u, opt);
    std::ostringstream lab;
    lab << "unstable(" << u << ")";
    c.expect(r.unstable && r.iterations <= 200, lab.str(), r.unstable);
  }
  return c.done();
}

Outcome c6_dde_regression() {
  Check c;
  const DdeLadder& l = ladder();
  for (size_t i = 0; i < l.solves.size(); ++i)
    c.expect(l.solves[i].report.converged, "conv(m=" + std::to_string(l.meshes[i]) + ")",
             l.solves[i].report.converged);
  if (!c.pass) return c.done();

  std::vector<double> D;
  for (size_t i = 0; i + 1 < l.solves.size(); ++i)
    D.push_back(
        refinement_diff(l.solves[i].profile, l.solves[i + 1].profile, l.solves.back().profile));
  c.expect(D[0] >= 0.5 && D[0] <= 2.1, "D(200)%", D[0]);
  for (size_t i = 0; i + 1 < D.size(); ++i) {
    const double ratio = D[i] / D[i + 1];
    std::ostringstream lab;
    lab << "D(" << l.meshes[i] << ")/D(" << l.meshes[i + 1] << ")";
    c.expect(ratio >= 3.0 && ratio <= 5.0, lab.str(), ratio);
  }
  const double err = fd_residual(l.solves.back().profile, FemMesh(8.0, 6400).dx, 8.0);
  c.expect(err <= 3e-4, "Err(6400)", err);
  return c.done();
}

Outcome c7_step_control() {
  Check c;
  FemMesh mesh(8.0, 6400);
  const BaseState base =
      make_base_state(mesh, make_base_function(GaussianSpec{-1.9}), "gaussian(-1.9)");
  DdeOptions alg1;
  alg1.max_newton = 600;
  alg1.max_resets = 200;
  const DdeSolve s = solve_dde(mesh, base, alg1);
  bool control_engaged = s.report.resets >= 1;
  for (double a : s.report.alpha_history)
    if (a < 1.0) control_engaged = true;
  c.expect(s.report.converged, "alg1_converged", s.report.converged);
  c.expect(control_engaged, "control_engaged(resets)", s.report.resets);

  DdeOptions plain = alg1;
  plain.step_control = false;
  plain.max_newton = 100;
  const DdeSolve p = solve_dde(mesh, base, plain);
  c.expect(!p.report.converged, "plain_newton_fails", p.report.status);
  return c.done();
}

Outcome c8_amplitude_scaling() {
  Check c;
  FemMesh mesh(8.0, 1600);
  const BaseState base = make_base_state(mesh, make_base_function(ScaledPvSpec{2.0, 0.0}), "2pv");
  DdeOptions o1;
  o1.a = 1.0;
  DdeOptions oa;
  oa.a = 1e6;
  const DdeSolve s1 = solve_dde(mesh, base, o1);
  const DdeSolve sa = solve_dde(mesh, base, oa);
  c.expect(s1.report.converged && sa.report.converged, "both_converged",
           s1.report.converged && sa.report.converged);
  c.expect(s1.report.residual_history.size() == sa.report.residual_history.size(), "hist_len",
           sa.report.residual_history.size());
  double worst = 0.0;
  const size_t n = std::min(s1.report.residual_history.size(), sa.report.residual_history.size());
  for (size_t k = 0; k < n; ++k) {
    const double r1 = s1.report.residual_history[k];
    const double ra = sa.report.residual_history[k];
    // relative match with an absolute floor at the convergence tolerance:
    // below tol the histories are pure roundoff
    worst = std::max(worst, std::abs(r1 - ra) - 1e-12 - 1e-8 * r1);
  }
  c.expect(worst <= 0.0, "hist_match_excess", worst);
  const double fdiff = (s1.profile.f - sa.profile.f).lpNorm<Eigen::Infinity>();
  c.expect(fdiff <= 1e-10, "final_f_diff", fdiff);
  const double lrel = (1e6 * s1.lambda - sa.lambda).lpNorm<Eigen::Infinity>() /
                      sa.lambda.lpNorm<Eigen::Infinity>();
  c.expect(lrel <= 1e-8, "lambda_scaling_rel", lrel);

  // Unscaled Gaussian initial guess, plain Newton: only the large amplitude
  // parameter is required to converge.
  Vector lam0 = Vector::Zero(mesh.nodes());
  for (int a = mesh.s_begin(); a < mesh.s_end(); ++a) {
    const double x = mesh.node_x(a);
    lam0[a] = std::exp(-x * x);
  }
  DdeOptions plain;
  plain.step_control = false;
  plain.max_newton = 100;
  plain.a = 1e6;
  const DdeSolve g6 = solve_dde(mesh, base, plain, &lam0);
  c.expect(g6.report.converged, "unscaled_guess_a1e6", g6.report.converged);
  for (double a : {1e-6, 1.0}) {
    DdeOptions pl = plain;
    pl.a = a;
    const DdeSolve g = solve_dde(mesh, base, pl, &lam0);
    std::ostringstream lab;
    lab << "a=" << a << "_status(exempt)";
    c.msg << lab.str() << "=" << g.report.status << " ";
  }
  return c.done();
}

Outcome c9_operator_properties() {
  Check c;
  {
    PeriodicGrid g(8.0, 256);  // dyadic spacing: exact row sums
    const Matrix K = window_matrix(g);
    double worst = 0.0;
    for (int i = 0; i < g.N; ++i) worst = std::max(worst, std::abs(K.row(i).sum() - 2.0));
    c.expect(worst == 0.0, "rowsum_dyadic", worst);
  }
  PeriodicGrid g(25.0, 1000);
  {
    const Matrix K = window_matrix(g);
    double worst = 0.0;
    for (int i = 0; i < g.N; ++i) worst = std::max(worst, std::abs(K.row(i).sum() - 2.0));
    c.expect(worst <= 2e-15, "rowsum", worst);

    std::mt19937 rng(3);
    std::normal_distribution<double> dist;
    double adj = 0.0, fft = 0.0;
    for (int t = 0; t < 20; ++t) {
      Vector mu(g.N), nu(g.N);
      for (int j = 0; j < g.N; ++j) {
        mu[j] = dist(rng);
        nu[j] = dist(rng);
      }
      adj = std::max(adj, std::abs(mu.dot(apply_window(g, nu)) - nu.dot(apply_window(g, mu))) /
                              (mu.norm() * nu.norm()));
      fft = std::max(fft, (apply_window(g, nu) - K * nu).lpNorm<Eigen::Infinity>() /
                              (K * nu).lpNorm<Eigen::Infinity>());
    }
    c.expect(adj <= 1e-12, "adjointness", adj);
    c.expect(fft <= 1e-12, "fft_vs_dense", fft);
  }
  {
    const int k = 20;
    const double xi = k * M_PI / 25.0;
    const double exact = 2.0 * std::sin(xi) / xi;
    std::vector<double> errs;
    for (int N : {250, 500, 1000})
      errs.push_back(std::abs(window_symbol(PeriodicGrid(25.0, N))[k] - exact));
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    c.expect(r1 >= 3.5 && r1 <= 4.5, "symbol_ratio1", r1);
    c.expect(r2 >= 3.5 && r2 <= 4.5, "symbol_ratio2", r2);
  }
  const SincMin m = min_sinc();
  c.expect(std::abs(m.xi_star - 4.4934) <= 1e-3, "xi_star", m.xi_star);
  c.expect(std::abs(m.sigma0 - 0.434467) <= 1e-5, "sigma0", m.sigma0);
  return c.done();
}

Outcome c10_dynamic_validation() {
  Check c;
  // fine grid so the profile's own discretization error stays inside the
  // budget; the soliton at zero far field decays far below tolerance by x=9
  PeriodicGrid grid(12.5, 4000);
  const PvResult pv = pv_reference(12.5, 4000);
  NieOptions opt;
  opt.grad_tol = 5e-10;
  const NieSolveResult sol = solve_nie(grid, Vector(-pv.g), 0.0, opt);
  c.expect(sol.converged, "nie_converged", sol.converged);
  c.expect(sol.rho_inf < 1e-7, "rho_inf", sol.rho_inf);

  const WaveProfile wave = rescale_profile(sol.profile, 1.0);  // u = -2 f, speed 1
  const int sites = 25;
  LatticeState st{Vector(sites), Boundary::periodic, 0.0};
  for (int j = 0; j < sites; ++j) st.u[j] = wave.f[j * grid.unit];
  const LatticeState e = rk4_evolve(st, 0.01, 400);  // t = 4, shift 4 sites
  double err = 0.0;
  for (int j = 0; j < sites; ++j)
    err = std::max(err, std::abs(e.u[j] - st.u[((j - 4) % sites + sites) % sites]));
  c.expect(err <= 1e-4, "translation_err", err);
  return c.done();
}

Outcome c11_longwave_scaling() {
  Check c;
  const double r1 = kdv_lattice_residual({1.0, 0.08}, 60.0, 0.05);
  const double r2 = kdv_lattice_residual({1.0, 0.04}, 60.0, 0.05);
  const double r3 = kdv_lattice_residual({1.0, 0.02}, 80.0, 0.05);
  const double q1 = r1 / r2, q2 = r2 / r3;
  c.expect(q1 >= 5.6 && q1 <= 22.6, "ratio(0.08/0.04)", q1);
  c.expect(q2 >= 5.6 && q2 <= 22.6, "ratio(0.04/0.02)", q2);
  return c.done();
}

Outcome c12_property_suites() {
  Check c;
  // gradient of the dual objective vs central differences
  {
    PeriodicGrid g(10.0, 200);
    NieOptions opt;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto smooth = [&](double amp) {
      Vector v = Vector::Zero(g.N);
      for (int k = 1; k <= 5; ++k) {
        const double a = coef(rng), ph = M_PI * coef(rng);
        for (int j = 0; j < g.N; ++j) v[j] += a * std::cos(k * M_PI * g.x(j) / g.L + ph);
      }
      return Vector(amp * v / v.lpNorm<Eigen::Infinity>());
    };
    double worst_grad = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Vector nu = smooth(0.8);
      const Vector wbar = smooth(1.0);
      const double u = -0.4 + 0.1 * (t % 9);
      Objective obj;
      obj.n = g.N;
      obj.eval = [&](const Vector& v, Vector& grad) {
        grad = dual_gradient(g, v, wbar, u, opt);
        return dual_objective(g, v, wbar, u, opt);
      };
      worst_grad = std::max(worst_grad, gradient_check(obj, nu, 1e-6).max_rel_err);
    }
    c.expect(worst_grad < 1e-6, "nie_gradient_check", worst_grad);

    // concavity along segments
    double concavity_violation = 0.0;
    const Vector wbar = smooth(1.0);
    for (int t = 0; t < 6; ++t) {
      const Vector n1 = smooth(0.8), n2 = smooth(0.8);
      const double s1 = dual_objective(g, n1, wbar, 0.2, opt);
      const double s2 = dual_objective(g, n2, wbar, 0.2, opt);
      for (double tt : {0.25, 0.5, 0.75}) {
        const double mid = dual_objective(g, Vector(tt * n1 + (1.0 - tt) * n2), wbar, 0.2, opt);
        concavity_violation = std::max(concavity_violation, tt * s1 + (1.0 - tt) * s2 - mid);
      }
    }
    c.expect(concavity_violation <= 1e-10, "concavity_violation", concavity_violation);

    // Hessian negative semidefiniteness
    double max_eig = -1e30;
    for (int t = 0; t < 3; ++t) {
      const Matrix H = dual_hessian(g, smooth(0.9), smooth(1.2), 0.5, opt);
      Eigen::SelfAdjointEigenSolver<Matrix> es(H);
      max_eig = std::max(max_eig, es.eigenvalues().maxCoeff());
    }
    c.expect(max_eig <= 1e-10, "hessian_max_eig", max_eig);
  }
  // jacobian of the weak residual vs directional finite differences
  {
    FemMesh mesh(2.0, 40);
    DdeOptions opt;
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto lam_field = [&](double amp) {
      Vector v = Vector::Zero(mesh.nodes());
      for (int a = mesh.s_begin(); a < mesh.s_end(); ++a) {
        const double x = mesh.node_x(a);
        double acc = 0.0;
        for (int k = 1; k <= 3; ++k) acc += coef(rng) * std::cos(0.3 * k * x + coef(rng));
        const double cut = std::cos(0.5 * M_PI * x / mesh.L);
        v[a] = amp * acc * cut * cut;
      }
      return v;
    };
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Vector lam = lam_field(0.005 * opt.a);
      BaseState base = make_base_state(
          mesh, [&](double x) { return coef(rng) * std::sin(0.4 * x) + coef(rng); }, "random");
      const auto J = assemble_jacobian(mesh, lam, base, opt);
      const Vector v = lam_field(1.0);
      Vector v_s(mesh.s_count());
      for (int a = mesh.s_begin(); a < mesh.s_end(); ++a) v_s[a - mesh.s_begin()] = v[a];
      const Vector Jv = J * v_s;
      const double eps = 1e-6 * opt.a;
      const Vector fd = (assemble_residual(mesh, lam + eps * v, base, opt) -
                         assemble_residual(mesh, lam - eps * v, base, opt)) /
                        (2.0 * eps);
      worst = std::max(worst, (fd - Jv).lpNorm<Eigen::Infinity>() / Jv.lpNorm<Eigen::Infinity>());
    }
    c.expect(worst < 1e-5, "dde_jacobian_check", worst);
  }
  return c.done();
}

Outcome c13_figure_families() {
  // Non-smooth base-state families: qualitative acceptance only (the exact
  // smoothing of the kinks is a free choice) -- the solves must converge and
  // the refinement difference must fall monotonically.
  Check c;
  const std::vector<std::pair<std::string, BaseSpec>> families = {
      {"sine(0.5)", SineSpec{0.5}}, {"sine(1)", SineSpec{1.0}},   {"sine(2)", SineSpec{2.0}},
      {"hat(-0.4)", HatSpec{-0.4}}, {"hat(-0.8)", HatSpec{-0.8}}, {"linear", LinearSpec{-0.25}},
  };
  for (const auto& [name, spec] : families) {
    const auto fn = make_base_function(spec);
    DdeOptions opt;
    opt.max_newton = 600;
    opt.max_resets = 400;
    std::vector<WaveProfile> profs;
    bool ok = true;
    for (int m : {200, 400, 800, 1600}) {
      FemMesh mesh(8.0, m);
      const DdeSolve s = solve_dde(mesh, make_base_state(mesh, fn, name), opt);
      ok = ok && s.report.converged;
      if (!ok) break;
      profs.push_back(s.profile);
    }
    if (!ok) {
      c.expect(false, name, "no convergence");
      continue;
    }
    const double d1 = refinement_diff(profs[0], profs[1], profs[3]);
    const double d2 = refinement_diff(profs[1], profs[2], profs[3]);
    const double d3 = refinement_diff(profs[2], profs[3], profs[3]);
    std::ostringstream val;
    val << d1 << "/" << d2 << "/" << d3;
    c.expect(d1 > d2 && d2 > d3, name + "_D_monotone", val.str());
  }
  return c.done();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1  Petviashvili baseline", c1_pv_baseline},
      {"C2  NIE solve quality along the sweep", c2_sweep_residuals},
      {"C3  spectral table reproduction", c3_spectral_table},
      {"C4  oscillatory-tail frequency", c4_tail_frequency},
      {"C5  Petviashvili post-processing dichotomy", c5_pv_dichotomy},
      {"C6  DDE regression, smooth family", c6_dde_regression},
      {"C7  step-size control engagement", c7_step_control},
      {"C8  amplitude-parameter scaling invariance", c8_amplitude_scaling},
      {"C9  window-operator properties", c9_operator_properties},
      {"C10 dynamic validation on the lattice", c10_dynamic_validation},
      {"C11 long-wave residual scaling", c11_longwave_scaling},
      {"C12 property suites", c12_property_suites},
      {"C13 base-state figure families (qualitative)", c13_figure_families},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = crit.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s  (%.1fs)  %s\n", out.pass ? "PASS" : "FAIL", crit.name, dt,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
