// Command-line driver for the low Mach number laboratory. Every subcommand
// reads a JSON config, runs one experiment, writes CSV/JSON/SVG reports and
// exits 0 when all acceptance thresholds in the config hold, 1 when the run
// completed but a threshold failed, 2 on a runtime error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>

#include "CLI11.hpp"
#include "machlab/acoustics.hpp"
#include "machlab/comp_euler.hpp"
#include "machlab/config.hpp"
#include "machlab/incomp_euler.hpp"
#include "machlab/measures.hpp"
#include "machlab/operators.hpp"
#include "machlab/report.hpp"
#include "machlab/sweeps.hpp"

namespace {

using namespace machlab;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON experiment config")->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
  cmd->add_option("--threads", args.threads, "parallel sweep members");
  cmd->add_option("--seed", args.seed, "random seed (overrides config)")
      ->each([&](const std::string&) { args.seed_set = true; });
  cmd->add_flag("--no-timing", args.no_timing,
                "write wall_time_s as 0 for byte-reproducible reports");
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig cfg = load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.threads > 0) cfg.sweep.threads = args.threads;
  if (args.seed_set) cfg.sweep.v0.seed = args.seed;
  return cfg;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

int check_sweep_thresholds(const SweepReport& report, const AcceptanceThresholds& acc) {
  int failures = 0;
  std::vector<double> sup, corrected, sup_pot;
  for (const auto& r : report.rows) {
    if (r.failed) {
      std::cout << "row eps=" << r.eps << " failed: " << r.error << "\n";
      ++failures;
      continue;
    }
    sup.push_back(r.sup_rel_energy);
    corrected.push_back(r.corrected_sup);
    sup_pot.push_back(r.sup_potential_part);
  }
  auto verdict = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  if (acc.require_strictly_decreasing && *acc.require_strictly_decreasing)
    verdict("sup_rel_energy strictly decreasing across eps", strictly_decreasing(sup));
  if (acc.potential_part_bound)
    verdict("potential part bounded",
            !sup_pot.empty() &&
                *std::max_element(sup_pot.begin(), sup_pot.end()) <= *acc.potential_part_bound);
  if (acc.require_plain_decreasing && *acc.require_plain_decreasing)
    verdict("plain diagnostic decreasing across eps", strictly_decreasing(sup));
  if (acc.require_corrected_decreasing && *acc.require_corrected_decreasing)
    verdict("corrected diagnostic decreasing across eps", strictly_decreasing(corrected));
  if (acc.min_floor_ratio) {
    const double lo = *std::min_element(sup.begin(), sup.end());
    const double hi = *std::max_element(sup.begin(), sup.end());
    verdict("diagnostic stays above floor", hi > 0.0 && lo / hi >= *acc.min_floor_ratio);
  }
  return failures;
}

int cmd_sweep(const CommonArgs& args, bool ill) {
  ExperimentConfig cfg = load(args);
  const SweepReport report =
      ill ? mach_sweep_illprepared(cfg.sweep) : mach_sweep_wellprepared(cfg.sweep);
  ReportOptions opts;
  opts.no_timing = args.no_timing;
  for (const auto& path : emit_report(report, cfg.sweep, cfg.out_dir, opts))
    std::cout << "wrote " << path << "\n";
  std::cout << "fitted slope " << report.fitted_order << "\n";
  return check_sweep_thresholds(report, cfg.acceptance) == 0 ? 0 : 1;
}

int cmd_decay(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  const TorusGrid& grid = cfg.sweep.grid;
  const Field s0 = gaussian_field(grid, cfg.decay.s0);
  const Field phi0 = gaussian_field(grid, cfg.decay.phi0);
  const VectorField grad_phi0 = grad_spectral(grid, phi0);
  const AcousticState init(grid, s0, grad_phi0, cfg.decay.eps, cfg.sweep.eos);
  const DecayResult result = decay_experiment(init, cfg.sweep.subset, cfg.decay.sample_times);

  ReportOptions opts;
  opts.no_timing = args.no_timing;
  for (const auto& path : emit_decay_report(result, cfg.decay.eps, cfg.out_dir, opts))
    std::cout << "wrote " << path << "\n";
  std::cout << "fitted decay slope " << result.fitted_slope << "\n";

  int failures = 0;
  if (cfg.acceptance.expected_slope && cfg.acceptance.slope_tol) {
    const bool ok =
        std::abs(result.fitted_slope - *cfg.acceptance.expected_slope) <= *cfg.acceptance.slope_tol;
    std::cout << (ok ? "PASS" : "FAIL") << " decay slope within tolerance\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

ConservedState initial_state_for(const ExperimentConfig& cfg, double eps) {
  const TorusGrid& grid = cfg.sweep.grid;
  if (grid.dim == 1)
    return smooth_bump_init(grid, cfg.sweep.eos, cfg.ensemble.rho_bump,
                            cfg.ensemble.velocity_bump, eps);
  if (cfg.data_kind == "ill-prepared")
    return illprepared_init(grid, cfg.sweep.eos, cfg.sweep.v0, cfg.sweep.s0, cfg.sweep.phi0, eps)
        .first;
  return wellprepared_init(grid, cfg.sweep.eos, cfg.sweep.v0, eps);
}

CompSolverConfig solver_for(const ExperimentConfig& cfg, double eps) {
  CompSolverConfig sc;
  sc.cfl = cfg.sweep.solver.cfl;
  sc.integrator = cfg.sweep.solver.integrator;
  sc.low_mach_fix = cfg.sweep.solver.low_mach_fix;
  sc.rho_floor = cfg.sweep.solver.rho_floor;
  sc.eos = cfg.sweep.eos;
  sc.eps = eps;
  return sc;
}

int cmd_energy_check(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  const double eps = cfg.sweep.eps_list.front();
  const ConservedState init = initial_state_for(cfg, eps);

  std::vector<EnergyRecord> elog;
  double mass0 = 0.0, mass_err = 0.0;
  {
    long double m = 0.0;
    for (double r : init.rho) m += r;
    mass0 = static_cast<double>(m) * init.grid.cell_volume();
  }
  run_with_observer(init, cfg.sweep.final_time, solver_for(cfg, eps),
                    cfg.sweep.resolved_output_times(),
                    [&](const ConservedState& s) {
                      long double m = 0.0;
                      for (double r : s.rho) m += r;
                      mass_err = std::max(
                          mass_err,
                          std::abs(static_cast<double>(m) * s.grid.cell_volume() - mass0));
                    },
                    &elog);
  for (const auto& path : emit_energy_log(elog, cfg.out_dir)) std::cout << "wrote " << path << "\n";

  double worst_growth = 0.0;
  for (std::size_t i = 1; i < elog.size(); ++i) {
    const double slack = std::max(elog[i - 1].total, 1e-30);
    worst_growth = std::max(worst_growth, (elog[i].total - elog[i - 1].total) / slack);
  }
  std::cout << "max relative mass drift " << mass_err / std::abs(mass0) << "\n";
  std::cout << "max per-step relative energy growth " << worst_growth << "\n";

  int failures = 0;
  if (cfg.acceptance.mass_rel_tol) {
    const bool ok = mass_err / std::abs(mass0) <= *cfg.acceptance.mass_rel_tol;
    std::cout << (ok ? "PASS" : "FAIL") << " mass conservation\n";
    if (!ok) ++failures;
  }
  if (cfg.acceptance.energy_step_rel_slack) {
    const bool ok = worst_growth <= *cfg.acceptance.energy_step_rel_slack;
    std::cout << (ok ? "PASS" : "FAIL") << " energy monotone within slack\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

// built-in space-time test functions for the refinement study
ScalarTestFn residual_scalar_fn(double T, double L) {
  ScalarTestFn fn;
  const double t1 = 0.9 * T;
  auto bump = [t1](double t) {
    if (t >= t1 || t < 0.0) return 0.0;
    const double u = t / t1;
    return std::pow(u * (1.0 - u) * 4.0, 3);
  };
  fn.value = [bump, L](double t, std::array<double, 2> x) {
    return bump(t) * std::sin(2.0 * M_PI * x[0] / L + 1.0);
  };
  fn.grad = [bump, L](double t, std::array<double, 2> x) {
    return std::array<double, 2>{
        bump(t) * 2.0 * M_PI / L * std::cos(2.0 * M_PI * x[0] / L + 1.0), 0.0};
  };
  fn.support_end = t1;
  return fn;
}

VectorTestFn residual_vector_fn(double T, double L) {
  VectorTestFn fn;
  const ScalarTestFn s = residual_scalar_fn(T, L);
  fn.value = [s](double t, std::array<double, 2> x) {
    return std::array<double, 2>{s.value(t, x), 0.0};
  };
  fn.grad = [s](double t, std::array<double, 2> x) {
    const auto g = s.grad(t, x);
    return std::array<std::array<double, 2>, 2>{{{g[0], g[1]}, {0.0, 0.0}}};
  };
  fn.support_end = s.support_end;
  return fn;
}

int cmd_residual(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  if (cfg.sweep.grid.dim != 1)
    throw std::invalid_argument("residual: refinement study runs on a 1D grid");
  const double eps = cfg.sweep.eps_list.front();
  const double T = cfg.sweep.final_time;
  const double L = cfg.sweep.grid.lengths[0];

  auto residuals_at = [&](int cells) {
    TorusGrid grid = cfg.sweep.grid;
    grid.cells[0] = cells;
    ExperimentConfig local = cfg;
    local.sweep.grid = grid;
    const ConservedState init = initial_state_for(local, eps);
    const Trajectory traj = run_dense(init, T, solver_for(local, eps));
    return std::array<double, 2>{
        weak_residual_continuity(traj, residual_scalar_fn(T, L)),
        weak_residual_momentum(traj, residual_vector_fn(T, L), cfg.sweep.eos)};
  };

  const int n = cfg.sweep.grid.cells[0];
  const auto coarse = residuals_at(n);
  const auto fine = residuals_at(2 * n);
  const double order_cont = std::log2(coarse[0] / fine[0]);
  const double order_mom = std::log2(coarse[1] / fine[1]);
  std::cout << "continuity residuals " << coarse[0] << " -> " << fine[0] << " (order "
            << order_cont << ")\n";
  std::cout << "momentum residuals " << coarse[1] << " -> " << fine[1] << " (order "
            << order_mom << ")\n";

  int failures = 0;
  if (cfg.acceptance.min_order) {
    const bool ok = order_cont >= *cfg.acceptance.min_order && order_mom >= *cfg.acceptance.min_order;
    std::cout << (ok ? "PASS" : "FAIL") << " refinement order\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

int cmd_ensemble(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  const double eps = cfg.sweep.eps_list.front();
  const ConservedState init = initial_state_for(cfg, eps);
  const EnsembleTrajectory ens = vanishing_viscosity_ensemble(
      init, cfg.ensemble.deltas, cfg.sweep.final_time, solver_for(cfg, eps),
      cfg.sweep.resolved_output_times());
  for (const auto& path : emit_ledger(ens.ledger, cfg.out_dir)) std::cout << "wrote " << path << "\n";

  int failures = 0;
  if (cfg.acceptance.require_defect_monotone && *cfg.acceptance.require_defect_monotone) {
    bool ok = true;
    for (const auto& member : ens.ledger.member_defect)
      for (std::size_t t = 0; t < member.size(); ++t) {
        if (member[t] < 0.0) ok = false;
        if (t > 0 && member[t] < member[t - 1] - 1e-12) ok = false;
      }
    std::cout << (ok ? "PASS" : "FAIL") << " defect nonnegative and nondecreasing\n";
    if (!ok) ++failures;
  }
  if (cfg.acceptance.require_variance_decreasing && *cfg.acceptance.require_variance_decreasing) {
    const auto var = pairwise_density_variance(ens.measures.back());
    bool ok = !var.empty();
    for (std::size_t i = 1; i < var.size(); ++i)
      if (!(var[i] < var[i - 1])) ok = false;
    std::cout << (ok ? "PASS" : "FAIL") << " ensemble variance decreasing as delta decreases\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"machlab: numerical laboratory for the low Mach number limit of the "
               "compressible Euler system"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* wp = app.add_subcommand("sweep-wp", "well-prepared Mach sweep against the "
                                            "incompressible reference");
  auto* ill = app.add_subcommand("sweep-ill", "ill-prepared sweep with acoustic correction");
  auto* decay = app.add_subcommand("acoustic-decay", "dispersive decay exponent experiment");
  auto* energy = app.add_subcommand("energy-check", "discrete energy monotonicity audit");
  auto* residual = app.add_subcommand("residual", "weak-form residual refinement study");
  auto* ensemble = app.add_subcommand("ensemble",
                                      "vanishing-viscosity measure generation with defect ledger");
  for (auto* cmd : {wp, ill, decay, energy, residual, ensemble}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (wp->parsed()) return cmd_sweep(args, false);
    if (ill->parsed()) return cmd_sweep(args, true);
    if (decay->parsed()) return cmd_decay(args);
    if (energy->parsed()) return cmd_energy_check(args);
    if (residual->parsed()) return cmd_residual(args);
    if (ensemble->parsed()) return cmd_ensemble(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
