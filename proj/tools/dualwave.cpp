#include "dualwave/base_states.hpp"
#include "dualwave/dde.hpp"
#include "dualwave/interp.hpp"
#include "dualwave/io.hpp"
#include "dualwave/lattice.hpp"
#include "dualwave/nie.hpp"
#include "dualwave/petviashvili.hpp"
#include "dualwave/verify.hpp"
#include "dualwave/window_op.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dualwave;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNoConvergence = 2;

int env_threads() {
  const char* v = std::getenv("DUALWAVE_THREADS");
  if (!v) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

double get_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int get_or(const json& j, const std::string& key, int fallback) {
  return j.contains(key) ? j.at(key).get<int>() : fallback;
}

bool get_or(const json& j, const std::string& key, bool fallback) {
  return j.contains(key) ? j.at(key).get<bool>() : fallback;
}

BaseSpec parse_base(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw InvalidInput("base: expected an object with a \"family\" key");
  const std::string family = j.at("family").get<std::string>();
  if (family == "pv") return PvSpec{};
  if (family == "scaled_pv") return ScaledPvSpec{get_or(j, "alpha", 1.0), get_or(j, "shift", 0.0)};
  if (family == "gaussian") return GaussianSpec{get_or(j, "gamma", 1.0)};
  if (family == "sine") return SineSpec{get_or(j, "omega", 1.0)};
  if (family == "hat") return HatSpec{get_or(j, "h", -0.4)};
  if (family == "linear") return LinearSpec{get_or(j, "slope", -0.25)};
  if (family == "file") {
    if (!j.contains("path")) throw InvalidInput("base: file family needs a \"path\"");
    return FileSpec{j.at("path").get<std::string>()};
  }
  throw InvalidInput("base: unknown family \"" + family + "\"");
}

json base_to_json(const BaseSpec& spec) {
  json j;
  if (std::holds_alternative<PvSpec>(spec)) {
    j["family"] = "pv";
  } else if (std::holds_alternative<ScaledPvSpec>(spec)) {
    const auto& s = std::get<ScaledPvSpec>(spec);
    j = {{"family", "scaled_pv"}, {"alpha", s.alpha}, {"shift", s.shift}};
  } else if (std::holds_alternative<GaussianSpec>(spec)) {
    j = {{"family", "gaussian"}, {"gamma", std::get<GaussianSpec>(spec).gamma}};
  } else if (std::holds_alternative<SineSpec>(spec)) {
    j = {{"family", "sine"}, {"omega", std::get<SineSpec>(spec).omega}};
  } else if (std::holds_alternative<HatSpec>(spec)) {
    j = {{"family", "hat"}, {"h", std::get<HatSpec>(spec).h}};
  } else if (std::holds_alternative<LinearSpec>(spec)) {
    j = {{"family", "linear"}, {"slope", std::get<LinearSpec>(spec).slope}};
  } else {
    j = {{"family", "file"}, {"path", std::get<FileSpec>(spec).path}};
  }
  return j;
}

// Periodic grid recovered from a profile written by the NIE-side commands:
// uniform x from -L to L - h.
PeriodicGrid grid_of_profile(const WaveProfile& p) {
  const int n = static_cast<int>(p.x.size());
  const double h = p.x[1] - p.x[0];
  for (int i = 1; i < n; ++i)
    if (std::abs(p.x[i] - p.x[i - 1] - h) > 1e-9 * h)
      throw InvalidInput("profile is not uniformly sampled");
  const double L = 0.5 * n * h;
  if (std::abs(-p.x[0] - L) > 1e-9 * L)
    throw InvalidInput("profile does not cover a symmetric periodic interval (-L, L)");
  return PeriodicGrid(L, n);
}

struct BundleWriter {
  fs::path dir;
  explicit BundleWriter(const fs::path& d) : dir(d) { fs::create_directories(dir); }
  void profile(const WaveProfile& p) const { write_profile_csv(dir / "profile.csv", p); }
  void dual(const Vector& x, const Vector& field, const std::string& name) const {
    write_dual_csv(dir / "dual.csv", x, field, name);
  }
  void report(const json& j) const { write_json(dir / "report.json", j); }
  void config(const json& j) const { write_json(dir / "config.json", j); }
};

// --- solve-dde ---------------------------------------------------------

int cmd_solve_dde(const json& cfg, const fs::path& out) {
  const double L = get_or(cfg, "L", 8.0);
  const int elements = get_or(cfg, "elements", 6400);
  DdeOptions opt;
  opt.a = get_or(cfg, "a", 1e6);
  opt.T = get_or(cfg, "T", 0.95);
  opt.tol = get_or(cfg, "tol", 1e-12);
  opt.alpha_min = get_or(cfg, "alpha_min", 0.01);
  opt.max_newton = get_or(cfg, "max_newton", 200);
  opt.max_resets = get_or(cfg, "max_resets", 50);
  opt.step_control = get_or(cfg, "step_control", true);
  const BaseSpec spec = parse_base(cfg.contains("base") ? cfg.at("base") : json{{"family", "pv"}});

  FemMesh mesh(L, elements);
  const auto fbar = make_base_function(spec, std::max(25.0, L + 3.0));
  const BaseState base = make_base_state(mesh, fbar, base_spec_name(spec));

  Vector lambda0 = Vector::Zero(mesh.nodes());
  bool use_lambda0 = false;
  if (cfg.contains("lambda0") && cfg.at("lambda0").is_object()) {
    const double amp = get_or(cfg.at("lambda0"), "gaussian", 0.0);
    if (amp != 0.0) {
      for (int a = mesh.s_begin(); a < mesh.s_end(); ++a) {
        const double x = mesh.node_x(a);
        lambda0[a] = amp * std::exp(-x * x);
      }
      use_lambda0 = true;
    }
  }

  const DdeSolve sol = solve_dde(mesh, base, opt, use_lambda0 ? &lambda0 : nullptr);

  json rep;
  rep["solver"] = to_json(sol.report);
  VerificationReport ver;
  if (sol.profile.f.size() > 0 && get_or(cfg, "fd_check", true)) {
    try {
      ver.err_max_interior = fd_residual(sol.profile, mesh.dx, L);
    } catch (const InvalidInput& e) {
      ver.notes = e.what();
    }
    rep["verification"] = to_json(ver);
  }

  json resolved = cfg;
  resolved["L"] = L;
  resolved["elements"] = elements;
  resolved["a"] = opt.a;
  resolved["T"] = opt.T;
  resolved["tol"] = opt.tol;
  resolved["base"] = base_to_json(spec);

  BundleWriter bundle(out);
  if (sol.profile.f.size() > 0) bundle.profile(sol.profile);
  Vector node_x(mesh.nodes());
  for (int a = 0; a < mesh.nodes(); ++a) node_x[a] = mesh.node_x(a);
  bundle.dual(node_x, sol.lambda, "lambda");
  bundle.report(rep);
  bundle.config(resolved);
  return sol.report.converged ? kExitOk : kExitNoConvergence;
}

// --- solve-nie / sweep --------------------------------------------------

Vector nie_base_state(const BaseSpec& spec, const PeriodicGrid& grid, double u_inf) {
  if (std::holds_alternative<FileSpec>(spec)) {
    const WaveProfile p = read_profile_csv(std::get<FileSpec>(spec).path);
    const PeriodicGrid pg = grid_of_profile(p);
    if (pg.N != grid.N || std::abs(pg.L - grid.L) > 1e-9)
      throw InvalidInput("base profile grid does not match the requested grid");
    return (p.f.array() - u_inf).matrix();
  }
  if (std::holds_alternative<PvSpec>(spec)) {
    const PvResult pv = pv_reference(grid.L, grid.N);
    if (!pv.converged) throw InvalidInput("fixed-point seeding did not converge");
    return -pv.g;
  }
  const auto f = make_base_function(spec, std::max(25.0, grid.L));
  Vector w(grid.N);
  for (int j = 0; j < grid.N; ++j) w[j] = f(grid.x(j)) - u_inf;
  return w;
}

json spectrum_json(const SpectralReport& sp) { return to_json(sp); }

int cmd_solve_nie(const json& cfg, const fs::path& out) {
  const double L = get_or(cfg, "L", 25.0);
  const int N = get_or(cfg, "N", 1000);
  const double u_inf = get_or(cfg, "u_inf", 0.0);
  NieOptions opt;
  opt.a = get_or(cfg, "a", 10.0);
  opt.grad_tol = get_or(cfg, "grad_tol", 2e-9);
  opt.max_qn_iters = get_or(cfg, "max_iters", 5000);

  PeriodicGrid grid(L, N);
  const BaseSpec spec = parse_base(cfg.contains("base") ? cfg.at("base") : json{{"family", "pv"}});
  const Vector wbar = nie_base_state(spec, grid, u_inf);
  const NieSolveResult sol = solve_nie(grid, wbar, u_inf, opt);

  json rep;
  rep["qn"] = to_json(sol.qn);
  rep["rho_inf"] = sol.rho_inf;
  rep["converged"] = sol.converged;
  if (get_or(cfg, "spectrum", false) && sol.converged)
    rep["spectrum"] = spectrum_json(stability_spectrum(grid, sol.profile.w(), u_inf));

  json resolved = cfg;
  resolved["L"] = L;
  resolved["N"] = N;
  resolved["u_inf"] = u_inf;
  resolved["a"] = opt.a;
  resolved["grad_tol"] = opt.grad_tol;
  resolved["base"] = base_to_json(spec);

  BundleWriter bundle(out);
  bundle.profile(sol.profile);
  bundle.dual(grid.points(), sol.nu, "nu");
  bundle.report(rep);
  bundle.config(resolved);
  return sol.converged ? kExitOk : kExitNoConvergence;
}

std::string u_tag(double u) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "u_%+.6g", u);
  return buf;
}

int cmd_sweep(const json& cfg, const fs::path& out) {
  const double L = get_or(cfg, "L", 25.0);
  const int N = get_or(cfg, "N", 1000);
  const double u_start = get_or(cfg, "u_start", 0.0);
  const double u_end = get_or(cfg, "u_end", 0.0);
  SweepOptions opt;
  opt.nie.a = get_or(cfg, "a", 10.0);
  opt.nie.grad_tol = get_or(cfg, "grad_tol", 2e-9);
  opt.nie.u_inf_step = get_or(cfg, "step", 0.025);
  opt.nie.max_qn_iters = get_or(cfg, "max_iters", 5000);
  opt.min_step = get_or(cfg, "min_step", 0.003125);
  opt.spectra = get_or(cfg, "spectra", true);
  opt.threads = env_threads();
  if (cfg.contains("spectra_at"))
    opt.spectra_at = cfg.at("spectra_at").get<std::vector<double>>();

  PeriodicGrid grid(L, N);
  const BaseSpec spec = parse_base(cfg.contains("base") ? cfg.at("base") : json{{"family", "pv"}});
  const Vector wbar0 = nie_base_state(spec, grid, u_start);

  const SweepResult sweep = sweep_u_infinity(grid, u_start, u_end, wbar0, opt);

  json resolved = cfg;
  resolved["L"] = L;
  resolved["N"] = N;
  resolved["u_start"] = u_start;
  resolved["u_end"] = u_end;
  resolved["step"] = opt.nie.u_inf_step;
  resolved["base"] = base_to_json(spec);

  json summary;
  summary["completed"] = sweep.completed;
  summary["status"] = sweep.status;
  summary["solutions"] = json::array();
  fs::create_directories(out);
  for (const auto& e : sweep.entries) {
    BundleWriter bundle(out / u_tag(e.u_inf));
    bundle.profile(e.solve.profile);
    bundle.dual(grid.points(), e.solve.nu, "nu");
    json rep;
    rep["qn"] = to_json(e.solve.qn);
    rep["rho_inf"] = e.solve.rho_inf;
    rep["converged"] = e.solve.converged;
    if (e.spectrum) rep["spectrum"] = spectrum_json(*e.spectrum);
    bundle.report(rep);
    bundle.config(resolved);
    summary["solutions"].push_back(
        {{"u_inf", e.u_inf}, {"rho_inf", e.solve.rho_inf}, {"dir", u_tag(e.u_inf)}});
  }
  write_json(out / "summary.json", summary);
  write_json(out / "config.json", resolved);
  return sweep.completed ? kExitOk : kExitNoConvergence;
}

// --- pv ------------------------------------------------------------------

int cmd_pv(const json& cfg, const fs::path& out) {
  const double L = get_or(cfg, "L", 25.0);
  const int N = get_or(cfg, "N", 1000);
  const double u_inf = get_or(cfg, "u_inf", 0.0);
  PvOptions opt;
  opt.q = get_or(cfg, "q", 1.4);
  opt.tol_c = get_or(cfg, "tol_c", 1e-6);
  opt.res_tol = get_or(cfg, "res_tol", 0.0);
  opt.max_iters = get_or(cfg, "max_iters", 200);

  PeriodicGrid grid(L, N);
  Vector g0;
  if (cfg.contains("seed") && cfg.at("seed").is_object() &&
      cfg.at("seed").value("family", "") == "file") {
    const WaveProfile p = read_profile_csv(cfg.at("seed").at("path").get<std::string>());
    const PeriodicGrid pg = grid_of_profile(p);
    if (pg.N != grid.N || std::abs(pg.L - grid.L) > 1e-9)
      throw InvalidInput("seed profile grid does not match the requested grid");
    g0 = -(p.f.array() - p.u_inf).matrix();  // g = -w
  } else {
    const double gamma = cfg.contains("seed") ? get_or(cfg.at("seed"), "gamma", 1.0) : 1.0;
    g0.resize(grid.N);
    for (int j = 0; j < grid.N; ++j)
      g0[j] = gamma * std::exp(-0.5 * grid.x(j) * grid.x(j)) / std::sqrt(2.0 * M_PI);
  }

  const PvResult pv = (u_inf == 0.0) ? pv_basic(grid, g0, opt) : pv_nie(grid, Vector(-g0), u_inf, opt);

  WaveProfile prof;
  prof.x = grid.points();
  prof.f = (u_inf - pv.g.array()).matrix();  // f = u_inf + w, w = -g
  prof.u_inf = u_inf;
  prof.c = -0.5;

  json rep;
  rep["pv"] = to_json(pv);
  rep["nie_residual_inf"] = nie_residual(grid, Vector(-pv.g), u_inf).second;

  json resolved = cfg;
  resolved["L"] = L;
  resolved["N"] = N;
  resolved["u_inf"] = u_inf;
  resolved["q"] = opt.q;
  resolved["tol_c"] = opt.tol_c;

  BundleWriter bundle(out);
  bundle.profile(prof);
  bundle.report(rep);
  bundle.config(resolved);
  return pv.converged ? kExitOk : kExitNoConvergence;
}

// --- evolve ---------------------------------------------------------------

int cmd_evolve(const json& cfg, const fs::path& out) {
  if (!cfg.contains("profile")) throw InvalidInput("evolve: config needs \"profile\"");
  const WaveProfile reduced = read_profile_csv(cfg.at("profile").get<std::string>());
  const double c_target = get_or(cfg, "c_target", 1.0);
  const double dt = get_or(cfg, "dt", 0.01);
  const double t_end = get_or(cfg, "t_end", 4.0);
  const bool periodic = cfg.value("boundary", std::string("periodic")) == "periodic";

  const WaveProfile wave = rescale_profile(reduced, c_target);
  const double h = wave.x[1] - wave.x[0];
  const double x_lo = wave.x[0];
  const double x_hi = wave.x[wave.x.size() - 1];

  // lattice sites at the integers inside the profile span; a periodic run
  // needs one site per unit of the (integer) period
  const int j_lo = static_cast<int>(std::ceil(x_lo - 1e-9));
  int j_hi;
  if (periodic) {
    const double period_real = x_hi + h - x_lo;
    const int period = static_cast<int>(std::llround(period_real));
    if (std::abs(period_real - period) > 1e-9)
      throw InvalidInput("evolve: periodic profile span must be a whole number of lattice units");
    j_hi = j_lo + period - 1;
  } else {
    j_hi = static_cast<int>(std::floor(x_hi + 1e-9));
  }
  if (j_hi - j_lo + 1 < 8) throw InvalidInput("evolve: profile spans too few lattice sites");

  const CubicInterp interp(x_lo, h, wave.f,
                           periodic ? CubicInterp::OutOfRange::wrap : CubicInterp::OutOfRange::clamp);
  const int sites = j_hi - j_lo + 1;
  LatticeState state;
  state.boundary = periodic ? Boundary::periodic : Boundary::fixed_ends;
  state.u.resize(sites);
  for (int j = 0; j < sites; ++j) state.u[j] = interp(static_cast<double>(j_lo + j));

  const int steps = static_cast<int>(std::llround(t_end / dt));
  const double sum0 = state.u.sum();
  const LatticeState evolved = rk4_evolve(state, dt, steps);

  // compare with the analytically translated profile
  const double shift = c_target * t_end;
  const double period = periodic ? (x_hi + h - x_lo) : 0.0;
  double err = 0.0;
  const double margin = periodic ? 0.0 : shift + 2.0;
  for (int j = 0; j < sites; ++j) {
    const double x = j_lo + j;
    if (!periodic && (x - x_lo < margin || x_hi - x < margin)) continue;
    double arg = x - shift;
    if (periodic) arg = x_lo + std::fmod(std::fmod(arg - x_lo, period) + period, period);
    err = std::max(err, std::abs(evolved.u[j] - interp(arg)));
  }

  json rep;
  rep["translation_error_sup"] = err;
  rep["lattice_sites"] = sites;
  rep["steps"] = steps;
  rep["sum_drift"] = evolved.u.sum() - sum0;
  rep["c_target"] = c_target;
  std::printf("evolve: %d sites, %d steps, translation error sup = %.6e\n", sites, steps, err);

  WaveProfile final_state;
  final_state.x = Vector::LinSpaced(sites, j_lo, j_hi);
  final_state.f = evolved.u;
  final_state.u_inf = wave.u_inf;
  final_state.c = c_target;

  BundleWriter bundle(out);
  bundle.profile(final_state);
  bundle.report(rep);
  bundle.config(cfg);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const json& cfg, const fs::path& out) {
  VerificationReport ver;
  std::vector<std::string> checks =
      cfg.contains("checks") ? cfg.at("checks").get<std::vector<std::string>>()
                             : std::vector<std::string>{"fd"};
  if (!cfg.contains("profile")) throw InvalidInput("verify: config needs \"profile\"");
  const WaveProfile prof = read_profile_csv(cfg.at("profile").get<std::string>());

  for (const std::string& check : checks) {
    if (check == "fd") {
      const double dx = get_or(cfg, "dx", prof.x[1] - prof.x[0]);
      const double L = get_or(cfg, "L", prof.x[prof.x.size() - 1]);
      ver.err_max_interior = fd_residual(prof, dx, L);
    } else if (check == "refine") {
      if (!cfg.contains("profile_fine")) throw InvalidInput("verify: refine needs \"profile_fine\"");
      const WaveProfile fine = read_profile_csv(cfg.at("profile_fine").get<std::string>());
      const WaveProfile ref = cfg.contains("profile_ref")
                                  ? read_profile_csv(cfg.at("profile_ref").get<std::string>())
                                  : fine;
      ver.d_of_m = refinement_diff(prof, fine, ref);
    } else if (check == "nie") {
      const PeriodicGrid grid = grid_of_profile(prof);
      const double u = get_or(cfg, "u_inf", prof.u_inf);
      ver.nie_residual_inf = nie_residual(grid, (prof.f.array() - u).matrix(), u).second;
    } else if (check == "tail") {
      double lo = 5.0, hi = 20.0;
      if (cfg.contains("window")) {
        const auto w = cfg.at("window").get<std::vector<double>>();
        if (w.size() != 2) throw InvalidInput("verify: window must be [lo, hi]");
        lo = w[0];
        hi = w[1];
      }
      try {
        ver.tail_wavenumber = tail_wavenumber(prof, lo, hi);
      } catch (const TooFewCrossings& e) {
        ver.notes += std::string(e.what()) + "; ";
      }
    } else {
      throw InvalidInput("verify: unknown check \"" + check + "\"");
    }
  }

  BundleWriter bundle(out);
  bundle.report(to_json(ver));
  bundle.config(cfg);
  return kExitOk;
}

// --- spectrum ----------------------------------------------------------------

int cmd_spectrum(const json& cfg, const fs::path& out) {
  if (!cfg.contains("profile")) throw InvalidInput("spectrum: config needs \"profile\"");
  const WaveProfile prof = read_profile_csv(cfg.at("profile").get<std::string>());
  const PeriodicGrid grid = grid_of_profile(prof);
  const double u = get_or(cfg, "u_inf", prof.u_inf);
  const SpectralReport sp = stability_spectrum(grid, (prof.f.array() - u).matrix(), u);

  BundleWriter bundle(out);
  json rep = to_json(sp);
  bundle.report(rep);
  bundle.config(cfg);
  write_dual_csv(bundle.dir / "kappa.csv", Vector::LinSpaced(sp.kappa.size(), 0, sp.kappa.size() - 1),
                 sp.kappa, "kappa");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dualwave: traveling-wave profiles of the semi-discrete Burgers lattice"};
  app.require_subcommand(1);

  struct Sub {
    std::string name;
    std::string help;
    int (*handler)(const json&, const fs::path&);
    CLI::App* cmd = nullptr;
    std::string config;
    std::string out = "dualwave_out";
  };
  std::vector<Sub> subs = {
      {"solve-dde", "solve the dual differential-difference formulation", cmd_solve_dde},
      {"solve-nie", "solve the dual integral-equation formulation", cmd_solve_nie},
      {"sweep", "path-follow the integral formulation in u_inf", cmd_sweep},
      {"pv", "run the fixed-point profile iteration", cmd_pv},
      {"evolve", "evolve a profile on the lattice and check the translation", cmd_evolve},
      {"verify", "independent residual / refinement / tail checks", cmd_verify},
      {"spectrum", "second-variation spectrum at a solution", cmd_spectrum},
  };
  for (auto& s : subs) {
    s.cmd = app.add_subcommand(s.name, s.help);
    s.cmd->add_option("--config", s.config, "JSON run configuration")->required();
    s.cmd->add_option("--out", s.out, "output directory");
  }

  CLI11_PARSE(app, argc, argv);

  for (auto& s : subs) {
    if (!s.cmd->parsed()) continue;
    try {
      const json cfg = read_json(s.config);
      return s.handler(cfg, s.out);
    } catch (const InvalidInput& e) {
      std::cerr << "dualwave " << s.name << ": " << e.what() << "\n";
      return kExitConfig;
    } catch (const json::exception& e) {
      std::cerr << "dualwave " << s.name << ": config error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "dualwave " << s.name << ": " << e.what() << "\n";
      return kExitNoConvergence;
    }
  }
  return kExitConfig;
}
