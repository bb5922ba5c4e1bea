// Acceptance suite: one numbered criterion per invocation, each printing a
// single PASS/FAIL line with the measured quantities. Exit code 0 on pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "machlab/acoustics.hpp"
#include "machlab/comp_euler.hpp"
#include "machlab/eos.hpp"
#include "machlab/incomp_euler.hpp"
#include "machlab/initial_data.hpp"
#include "machlab/measures.hpp"
#include "machlab/operators.hpp"
#include "machlab/report.hpp"
#include "machlab/sweeps.hpp"

using namespace machlab;

namespace {

namespace fs = std::filesystem;

int g_criterion = 0;
bool report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("[%2d/13] %s %s (%s)\n", g_criterion, ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  return ok;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// -- 1: closed-form relative potential identity for the quadratic law -------
bool criterion_eos_identity() {
  const EosModel eos{1.0, 2.0, 1.0};
  double worst = 0.0;
  const int n = 200;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double rho = 0.1 + i * (10.0 - 0.1) / n;
      const double r = 0.1 + j * (10.0 - 0.1) / n;
      worst = std::max(worst, std::abs(rel_potential(eos, rho, r) - (rho - r) * (rho - r)));
    }
  return report(worst <= 1e-12, "eos_identity",
                "max |H - (rho-r)^2| = " + fmt(worst) + ", tol 1e-12");
}

// -- 2: convexity constants exist and certify the bounds --------------------
bool criterion_convexity_bounds() {
  bool ok = true;
  std::string detail;
  for (double gamma : {1.4, 2.0}) {
    const EosModel eos{1.0, gamma, 1.0};
    const double delta = 0.25;
    const auto [c_ess, c_res] = convexity_constants(eos, delta);
    ok = ok && std::isfinite(c_ess) && c_ess > 0.0 && std::isfinite(c_res) && c_res > 0.0;
    const double slack = 1.0 + 1e-12;
    for (int i = 0; i <= 4000; ++i) {
      const double rho = delta + i * (1.0 / delta - delta) / 4000.0;
      const double h = rel_potential(eos, rho, 1.0);
      if ((rho - 1.0) * (rho - 1.0) > slack * c_ess * h + 1e-15) ok = false;
    }
    for (int i = 0; i < 2000; ++i) {
      const double rho = delta * i / 2000.0;
      const double lhs = 1.0 + std::abs(rho - 1.0) + pressure_potential(eos, rho);
      if (lhs > slack * c_res * rel_potential(eos, rho, 1.0)) ok = false;
    }
    for (int i = 0; i <= 2000; ++i) {
      const double rho = std::exp(std::log(1.0 / delta) + i * std::log(2.5e5) / 2000.0);
      const double lhs = 1.0 + std::abs(rho - 1.0) + pressure_potential(eos, rho);
      if (lhs > slack * c_res * rel_potential(eos, rho, 1.0)) ok = false;
    }
    detail += "gamma=" + fmt(gamma) + ": c_ess=" + fmt(c_ess) + " c_res=" + fmt(c_res) + " ";
  }
  return report(ok, "convexity_bounds", detail);
}

// -- 3: Helmholtz projection on 256^2 random band-limited fields ------------
bool criterion_helmholtz() {
  const TorusGrid g = TorusGrid::square(256, 2.0);
  double worst_grad = 0.0, worst_idem = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Field psi = dft_inverse(dft_forward(
        g, make_vorticity(g, VelocitySpec::band_limited_random(1.0, 1, 20, seed))));
    const VectorField gradpsi = grad_spectral(g, psi);
    const VectorField killed = helmholtz_project(g, gradpsi);
    double gmax = 1e-300;
    for (int d = 0; d < 2; ++d)
      for (double v : gradpsi[d]) gmax = std::max(gmax, std::abs(v));
    for (int d = 0; d < 2; ++d)
      for (double v : killed[d]) worst_grad = std::max(worst_grad, std::abs(v) / gmax);

    const VectorField mixed =
        make_velocity(g, VelocitySpec::band_limited_random(1.0, 1, 30, seed + 100));
    VectorField with_grad(mixed);
    for (int d = 0; d < 2; ++d)
      for (std::size_t c = 0; c < psi.size(); ++c) with_grad[d][c] += gradpsi[d][c];
    const VectorField once = helmholtz_project(g, with_grad);
    const VectorField twice = helmholtz_project(g, once);
    double umax = 1e-300;
    for (int d = 0; d < 2; ++d)
      for (double v : once[d]) umax = std::max(umax, std::abs(v));
    for (int d = 0; d < 2; ++d)
      for (std::size_t c = 0; c < psi.size(); ++c)
        worst_idem = std::max(worst_idem, std::abs(twice[d][c] - once[d][c]) / umax);
  }
  const bool ok = worst_grad <= 1e-10 && worst_idem <= 1e-10;
  return report(ok, "helmholtz_projection",
                "gradient residual " + fmt(worst_grad) + ", idempotence residual " +
                    fmt(worst_idem) + ", tol 1e-10");
}

// -- 4: mass conservation and discrete energy inequality --------------------
bool criterion_solver_conservation() {
  const TorusGrid g = TorusGrid::line(512, 2.0);
  const EosModel eos{1.0, 2.0, 1.0};
  const ConservedState init =
      smooth_bump_init(g, eos, {0.3, 0.25, {0.0, 0.0}}, {0.1, 0.3, {-0.3, 0.0}}, 0.5);
  CompSolverConfig cfg;
  cfg.eos = eos;
  cfg.eps = 0.5;

  double mass0 = 0.0;
  {
    long double m = 0.0;
    for (double r : init.rho) m += r;
    mass0 = static_cast<double>(m) * g.cell_volume();
  }
  double mass_drift = 0.0, worst_growth = 0.0;
  std::vector<EnergyRecord> elog;
  run_with_observer(init, 0.5, cfg, {0.1, 0.2, 0.3, 0.4, 0.5},
                    [&](const ConservedState& s) {
                      long double m = 0.0;
                      for (double r : s.rho) m += r;
                      mass_drift = std::max(
                          mass_drift,
                          std::abs(static_cast<double>(m) * g.cell_volume() - mass0) / mass0);
                    },
                    &elog);
  for (std::size_t i = 1; i < elog.size(); ++i)
    worst_growth =
        std::max(worst_growth, (elog[i].total - elog[i - 1].total) / std::max(elog[i - 1].total,
                                                                              1e-30));
  const bool ok = mass_drift <= 1e-12 && worst_growth <= 1e-6;
  return report(ok, "solver_conservation",
                "mass drift " + fmt(mass_drift) + " (tol 1e-12), worst step growth " +
                    fmt(worst_growth) + " (tol 1e-6), steps " + std::to_string(elog.size() - 1));
}

// -- 5: weak-form residual refinement order ---------------------------------
bool criterion_weak_residual_order() {
  const double T = 0.5, L = 2.0;
  const EosModel eos{1.0, 2.0, 1.0};

  ScalarTestFn sfn;
  const double t1 = 0.9 * T;
  auto time_bump = [t1](double t) {
    if (t >= t1 || t < 0.0) return 0.0;
    const double u = t / t1;
    return std::pow(4.0 * u * (1.0 - u), 3);
  };
  sfn.value = [time_bump, L](double t, std::array<double, 2> x) {
    return time_bump(t) * std::sin(2.0 * M_PI * x[0] / L + 1.0);
  };
  sfn.grad = [time_bump, L](double t, std::array<double, 2> x) {
    return std::array<double, 2>{
        time_bump(t) * (2.0 * M_PI / L) * std::cos(2.0 * M_PI * x[0] / L + 1.0), 0.0};
  };
  sfn.support_end = t1;

  VectorTestFn vfn;
  vfn.value = [sfn](double t, std::array<double, 2> x) {
    return std::array<double, 2>{sfn.value(t, x), 0.0};
  };
  vfn.grad = [sfn](double t, std::array<double, 2> x) {
    const auto gr = sfn.grad(t, x);
    return std::array<std::array<double, 2>, 2>{{{gr[0], gr[1]}, {0.0, 0.0}}};
  };
  vfn.support_end = sfn.support_end;

  auto residuals_at = [&](int cells) {
    const TorusGrid g = TorusGrid::line(cells, L);
    const ConservedState init =
        smooth_bump_init(g, eos, {0.3, 0.25, {0.0, 0.0}}, {0.1, 0.3, {-0.3, 0.0}}, 0.5);
    CompSolverConfig cfg;
    cfg.eos = eos;
    cfg.eps = 0.5;
    const Trajectory traj = run_dense(init, T, cfg);
    return std::array<double, 2>{weak_residual_continuity(traj, sfn),
                                 weak_residual_momentum(traj, vfn, eos)};
  };
  const auto coarse = residuals_at(512);
  const auto fine = residuals_at(1024);
  const double order_c = std::log2(coarse[0] / fine[0]);
  const double order_m = std::log2(coarse[1] / fine[1]);
  const bool ok = order_c >= 0.8 && order_m >= 0.8;
  return report(ok, "weak_residual_order",
                "continuity order " + fmt(order_c) + ", momentum order " + fmt(order_m) +
                    ", required 0.8");
}

// -- 6: incompressible invariants --------------------------------------------
bool criterion_incompressible_invariants() {
  const TorusGrid g = TorusGrid::square(128, 2.0);

  const Field tg = make_vorticity(g, VelocitySpec::taylor_green(1.0));
  double tg_max = 0.0;
  for (double v : tg) tg_max = std::max(tg_max, std::abs(v));
  const auto tg_run = incomp_run(IncompressibleState(g, tg), 1.0, {1.0});
  double tg_drift = 0.0;
  for (std::size_t c = 0; c < tg.size(); ++c)
    tg_drift = std::max(tg_drift, std::abs(tg_run.front().omega[c] - tg[c]));
  tg_drift /= tg_max;

  const Field rnd = make_vorticity(g, VelocitySpec::band_limited_random(1.0, 2, 8, 11));
  const double e0 = kinetic_energy(g, velocity_from_vorticity(g, rnd));
  const double z0 = enstrophy(g, rnd);
  const auto rnd_run = incomp_run(IncompressibleState(g, rnd), 1.0, {1.0});
  const double e_drift =
      std::abs(kinetic_energy(g, velocity_from_vorticity(g, rnd_run.front().omega)) - e0) / e0;
  const double z_drift = std::abs(enstrophy(g, rnd_run.front().omega) - z0) / z0;

  const bool ok = tg_drift <= 1e-8 && e_drift <= 1e-8 && z_drift <= 1e-8;
  return report(ok, "incompressible_invariants",
                "taylor-green drift " + fmt(tg_drift) + ", energy drift " + fmt(e_drift) +
                    ", enstrophy drift " + fmt(z_drift) + ", tol 1e-8");
}

// -- 7: acoustic energy conservation and dispersion relation ----------------
bool criterion_acoustic_conservation() {
  const EosModel eos{0.5, 2.0, 1.0};  // p'(1) = 1
  const TorusGrid g = TorusGrid::square(128, 2.0);
  const Field s0 = gaussian_field(g, {0.5, 0.25, {0.0, 0.0}});
  const Field phi0 = gaussian_field(g, {0.3, 0.25, {0.0, 0.0}});
  AcousticState state(g, s0, grad_spectral(g, phi0), 0.1, eos);

  const double e0 = acoustic_energy(state);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    state = acoustic_step_exact(state, 0.0005);
    worst = std::max(worst, std::abs(acoustic_energy(state) - e0) / e0);
  }

  // single-mode phase speed
  const TorusGrid line = TorusGrid::line(256, 2.0);
  const double k = 2.0 * M_PI / line.lengths[0];
  const double eps = 0.1;
  Field sm(line.cell_count());
  VectorField gm(line);
  for (int i = 0; i < line.cells[0]; ++i) {
    sm[i] = std::cos(k * line.center(0, i));
    gm[0][i] = sm[i];  // right-mover for c = 1
  }
  AcousticState mode(line, sm, gm, eps, eos);
  const double dt = 0.004;
  const AcousticState moved = acoustic_step_exact(mode, dt);
  const ScalarSpectrum before = dft_forward(line, mode.s);
  const ScalarSpectrum after = dft_forward(line, moved.s);
  double dphi = std::arg(after.c[1]) - std::arg(before.c[1]);
  while (dphi > M_PI) dphi -= 2.0 * M_PI;
  while (dphi < -M_PI) dphi += 2.0 * M_PI;
  const double speed_err = std::abs(-dphi / (k * dt) - 1.0 / eps) / (1.0 / eps);

  const bool ok = worst <= 1e-12 && speed_err <= 1e-10;
  return report(ok, "acoustic_conservation",
                "energy drift " + fmt(worst) + " over 1000 steps (tol 1e-12), phase speed error " +
                    fmt(speed_err) + " (tol 1e-10)");
}

// -- 8: dispersive decay exponents ------------------------------------------
bool criterion_dispersive_decay() {
  const EosModel eos{0.5, 2.0, 1.0};
  const double eps = 0.1;

  const TorusGrid g2 = TorusGrid::square(1024, 100.0);
  const Field s2 = gaussian_field(g2, {0.5, 0.5, {0.0, 0.0}});
  const Field p2 = gaussian_field(g2, {0.25, 0.5, {0.0, 0.0}});
  const AcousticState init2(g2, s2, grad_spectral(g2, p2), eps, eos);
  std::vector<double> t2;
  for (int i = 2; i <= 10; ++i) t2.push_back(0.2 * i);
  const DecayResult r2 = decay_experiment(init2, SubBox::centered({21.0, 21.0}), t2);

  const TorusGrid g1 = TorusGrid::line(4096, 100.0);
  const Field s1 = gaussian_field(g1, {0.5, 0.5, {0.0, 0.0}});
  const Field p1 = gaussian_field(g1, {0.25, 0.5, {0.0, 0.0}});
  const AcousticState init1(g1, s1, grad_spectral(g1, p1), eps, eos);
  std::vector<double> t1;
  for (int i = 2; i <= 9; ++i) t1.push_back(0.2 * i);  // pulses separated, inside B
  const DecayResult r1 = decay_experiment(init1, SubBox::centered({21.0, 21.0}), t1);

  const bool ok = std::abs(r2.fitted_slope + 1.0) <= 0.25 && std::abs(r1.fitted_slope) <= 0.1;
  return report(ok, "dispersive_decay",
                "2D slope " + fmt(r2.fitted_slope) + " (target -1 +- 0.25), 1D slope " +
                    fmt(r1.fitted_slope) + " (target 0 +- 0.1)");
}

SweepConfig wp_sweep_config() {
  SweepConfig cfg;
  cfg.eos = EosModel{0.5, 2.0, 1.0};
  cfg.grid = TorusGrid::square(256, 2.0);
  cfg.eps_list = {0.2, 0.1, 0.05};
  cfg.final_time = 0.5;
  cfg.output_count = 10;
  cfg.v0 = VelocitySpec::taylor_green(1.0);
  cfg.solver.low_mach_fix = true;
  cfg.threads = 2;
  return cfg;
}

// -- 9: well-prepared Mach sweep --------------------------------------------
bool criterion_wellprepared_sweep() {
  const SweepConfig cfg = wp_sweep_config();
  const SweepReport rep = mach_sweep_wellprepared(cfg);

  bool decreasing = true;
  std::string detail = "sup_rel_energy:";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].failed) decreasing = false;
    if (i > 0 && !(rep.rows[i].sup_rel_energy < rep.rows[i - 1].sup_rel_energy))
      decreasing = false;
    detail += " " + fmt(rep.rows[i].sup_rel_energy);
  }
  // the 1/eps^2-weighted potential part stays bounded by a common constant:
  // no blow-up relative to the largest-eps member of the sweep
  const double pot_bound = 4.0 * rep.rows.front().sup_potential_part + 1e-12;
  bool pot_ok = true;
  detail += "; potential:";
  for (const auto& row : rep.rows) {
    if (row.sup_potential_part > pot_bound) pot_ok = false;
    detail += " " + fmt(row.sup_potential_part);
  }
  return report(decreasing && pot_ok, "wellprepared_sweep", detail);
}

// -- 10: ill-prepared contrast: torus pollution vs large-box dispersion -----
bool criterion_illprepared_contrast() {
  SweepConfig base;
  base.eos = EosModel{0.5, 2.0, 1.0};
  base.eps_list = {0.2, 0.1, 0.05};
  base.v0 = VelocitySpec::vortex_pair(1.0, 0.25, 0.8);
  base.s0 = GaussianSpec{0.25, 0.2, {0.0, 0.0}};
  base.phi0 = GaussianSpec{0.25, 0.2, {0.0, 0.0}};
  base.subset = SubBox::centered({0.75, 0.75});
  base.solver.low_mach_fix = true;
  base.threads = 2;
  base.output_count = 6;
  base.delta_time_fraction = 0.2;

  // (a) small periodic torus: acoustic pollution persists. The fine grid
  // keeps the numerical damping of the wrapping waves small at the lowest
  // Mach number, so the floor reflects the domain and not the scheme.
  SweepConfig torus(base);
  torus.grid = TorusGrid::square(512, 2.0);
  torus.final_time = 0.35;
  torus.subset = SubBox::centered({0.5, 0.5});
  torus.enforce_wrap_window = false;
  const SweepReport rep_torus = mach_sweep_illprepared(torus);
  double lo = 1e300, hi = 0.0;
  bool torus_ok = true;
  std::string detail = "torus plain:";
  for (const auto& row : rep_torus.rows) {
    if (row.failed) torus_ok = false;
    lo = std::min(lo, row.sup_rel_energy);
    hi = std::max(hi, row.sup_rel_energy);
    detail += " " + fmt(row.sup_rel_energy);
  }
  torus_ok = torus_ok && hi > 0.0 && lo / hi >= 0.4;  // stays above the floor

  // (b) large box: dispersion carries the waves away from B
  SweepConfig box(base);
  box.grid = TorusGrid(2, {512, 512}, {16.0, 16.0});
  box.final_time = 0.3;
  const SweepReport rep_box = mach_sweep_illprepared(box);
  bool plain_dec = true, corr_dec = true;
  detail += "; box plain:";
  for (std::size_t i = 0; i < rep_box.rows.size(); ++i) {
    if (rep_box.rows[i].failed) plain_dec = corr_dec = false;
    if (i > 0) {
      if (!(rep_box.rows[i].sup_rel_energy < rep_box.rows[i - 1].sup_rel_energy))
        plain_dec = false;
      if (!(rep_box.rows[i].corrected_sup < rep_box.rows[i - 1].corrected_sup)) corr_dec = false;
    }
    detail += " " + fmt(rep_box.rows[i].sup_rel_energy);
  }
  detail += "; box corrected:";
  for (const auto& row : rep_box.rows) detail += " " + fmt(row.corrected_sup);

  return report(torus_ok && plain_dec && corr_dec, "illprepared_contrast", detail);
}

// -- 11: Jensen inequality over random ensembles ----------------------------
bool criterion_jensen() {
  const TorusGrid g = TorusGrid::line(16, 2.0);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho_dist(0.2, 4.0);
  std::uniform_real_distribution<double> mom_dist(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t members = 2 + trial % 5;
    std::vector<ConservedState> states;
    for (std::size_t k = 0; k < members; ++k) {
      ConservedState s(g, 0.5);
      for (std::size_t c = 0; c < g.cell_count(); ++c) {
        s.rho[c] = rho_dist(rng);
        s.mom[0][c] = mom_dist(rng);
      }
      states.push_back(std::move(s));
    }
    const EmpiricalMeasure m = EmpiricalMeasure::equal_weights(std::move(states));
    for (double q : {1.5, 2.0, 3.0}) {
      const JensenReport rep = jensen_check(
          m, [](double rho, const std::array<double, 2>& mom) { return mom[0] - 0.5 * rho; }, q);
      worst = std::max(worst, rep.max_violation);
    }
  }
  return report(worst <= 1e-12, "jensen",
                "max violation " + fmt(worst) + " over 1000 ensembles, tol 1e-12");
}

// -- 12: vanishing-viscosity ensembles --------------------------------------
bool criterion_viscous_ensembles() {
  const TorusGrid g = TorusGrid::line(256, 2.0);
  const EosModel eos{1.0, 2.0, 1.0};
  const ConservedState init =
      smooth_bump_init(g, eos, {0.3, 0.25, {0.0, 0.0}}, {0.2, 0.3, {-0.3, 0.0}}, 1.0);
  CompSolverConfig cfg;
  cfg.eos = eos;
  cfg.eps = 1.0;
  const std::vector<double> deltas{2e-2, 1e-2, 5e-3, 2.5e-3};
  const EnsembleTrajectory ens =
      vanishing_viscosity_ensemble(init, deltas, 0.15, cfg, {0.05, 0.1, 0.15});

  bool defect_ok = true;
  for (const auto& member : ens.ledger.member_defect)
    for (std::size_t t = 0; t < member.size(); ++t) {
      if (member[t] < 0.0) defect_ok = false;
      if (t > 0 && member[t] < member[t - 1] - 1e-12) defect_ok = false;
    }
  for (double d : ens.ledger.ensemble_defect)
    if (d < 0.0) defect_ok = false;

  const auto var = pairwise_density_variance(ens.measures.back());
  bool var_ok = var.size() == deltas.size() - 1;
  std::string vs = "pair variances:";
  for (std::size_t i = 0; i < var.size(); ++i) {
    if (i > 0 && !(var[i] < var[i - 1])) var_ok = false;
    vs += " " + fmt(var[i]);
  }
  return report(defect_ok && var_ok, "viscous_ensembles",
                std::string(defect_ok ? "defects monotone" : "defect violation") + "; " + vs);
}

// -- 13: byte-identical reports under a fixed seed ---------------------------
bool criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "machlab_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::string config_path = (dir / "config.json").string();
  {
    std::ofstream cfg(config_path);
    cfg << R"({
  "eos": {"a": 0.5, "gamma": 2.0, "rho_bar": 1.0},
  "grid": {"dim": 2, "cells": [64, 64], "lengths": [2.0, 2.0]},
  "eps": [0.4, 0.2],
  "final_time": 0.05,
  "output_count": 2,
  "solver": {"low_mach_fix": true},
  "threads": 2,
  "data": {"kind": "well-prepared",
           "v0": {"name": "band-limited-random", "amplitude": 1.0, "k_min": 1, "k_max": 5}}
})";
  }

  auto run_sweep = [&](const std::string& out) {
    const std::string cmd = std::string(MACHLAB_CLI_PATH) + " sweep-wp --config " + config_path +
                            " --out " + (dir / out).string() + " --seed 7 --no-timing > " +
                            (dir / (out + ".log")).string() + " 2>&1";
    return std::system(cmd.c_str());
  };
  const int rc1 = run_sweep("a");
  const int rc2 = run_sweep("b");

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  const std::string csv_a = slurp(dir / "a" / "sweep.csv");
  const std::string csv_b = slurp(dir / "b" / "sweep.csv");
  const std::string json_a = slurp(dir / "a" / "sweep.json");
  const std::string json_b = slurp(dir / "b" / "sweep.json");

  bool ok = rc1 == 0 && rc2 == 0 && !csv_a.empty() && csv_a == csv_b && json_a == json_b;
  std::string detail = "csv bytes " + std::to_string(csv_a.size()) +
                       (csv_a == csv_b ? " identical" : " DIFFER");

  // regression against the committed golden file, when present
  const fs::path golden = fs::path(MACHLAB_GOLDEN_DIR) / "sweep_wp_golden.csv";
  if (fs::exists(golden)) {
    const bool golden_ok = slurp(golden) == csv_a;
    ok = ok && golden_ok;
    detail += golden_ok ? ", matches golden" : ", golden MISMATCH";
  } else {
    detail += ", golden file absent";
  }
  fs::remove_all(dir);
  return report(ok, "determinism", detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <criterion 1..13>\n", argv[0]);
    return 2;
  }
  g_criterion = std::atoi(argv[1]);
  bool ok = false;
  switch (g_criterion) {
    case 1: ok = criterion_eos_identity(); break;
    case 2: ok = criterion_convexity_bounds(); break;
    case 3: ok = criterion_helmholtz(); break;
    case 4: ok = criterion_solver_conservation(); break;
    case 5: ok = criterion_weak_residual_order(); break;
    case 6: ok = criterion_incompressible_invariants(); break;
    case 7: ok = criterion_acoustic_conservation(); break;
    case 8: ok = criterion_dispersive_decay(); break;
    case 9: ok = criterion_wellprepared_sweep(); break;
    case 10: ok = criterion_illprepared_contrast(); break;
    case 11: ok = criterion_jensen(); break;
    case 12: ok = criterion_viscous_ensembles(); break;
    case 13: ok = criterion_determinism(); break;
    default:
      std::fprintf(stderr, "unknown criterion %d\n", g_criterion);
      return 2;
  }
  return ok ? 0 : 1;
}
