#include "machlab/sweeps.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "machlab/acoustics.hpp"
#include "machlab/incomp_euler.hpp"
#include "machlab/operators.hpp"

namespace machlab {

namespace {

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

CompSolverConfig solver_config(const SweepConfig& cfg, double eps) {
  CompSolverConfig sc;
  sc.cfl = cfg.solver.cfl;
  sc.integrator = cfg.solver.integrator;
  sc.low_mach_fix = cfg.solver.low_mach_fix;
  sc.rho_floor = cfg.solver.rho_floor;
  sc.eos = cfg.eos;
  sc.eps = eps;
  return sc;
}

void run_rows_parallel(int threads, std::size_t n, const std::function<void(std::size_t)>& work) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> SweepConfig::resolved_output_times() const {
  if (!output_times.empty()) return output_times;
  std::vector<double> times;
  for (int i = 1; i <= output_count; ++i)
    times.push_back(final_time * i / static_cast<double>(output_count));
  return times;
}

void SweepConfig::validate_common() const {
  eos.validate();
  grid.validate();
  if (!(final_time > 0.0)) throw std::invalid_argument("sweep: final_time must be positive");
  if (eps_list.empty()) throw std::invalid_argument("sweep: eps list must not be empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] <= 1.0))
      throw std::invalid_argument("sweep: eps values must lie in (0, 1]");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("sweep: eps values must be strictly decreasing");
  }
}

SweepReport mach_sweep_wellprepared(const SweepConfig& config) {
  config.validate_common();
  if (config.grid.dim != 2)
    throw std::invalid_argument("mach_sweep_wellprepared: grid must be 2D");
  const std::vector<double> times = config.resolved_output_times();

  // one incompressible reference for the whole sweep
  const IncompressibleState omega0(config.grid, make_vorticity(config.grid, config.v0));
  const auto incomp_states = incomp_run(omega0, config.final_time, times);
  std::vector<VectorField> v_ref;
  v_ref.reserve(incomp_states.size());
  for (const auto& st : incomp_states)
    v_ref.push_back(velocity_from_vorticity(config.grid, st.omega));

  const Field rho_bar_field(config.grid.cell_count(), config.eos.rho_bar);

  SweepReport report;
  report.rows.resize(config.eps_list.size());
  auto work = [&](std::size_t idx) {
    SweepRow& row = report.rows[idx];
    row.eps = config.eps_list[idx];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const ConservedState init =
          wellprepared_init(config.grid, config.eos, config.v0, row.eps);
      const double e0 = total_energy(init, config.eos);
      std::vector<EnergyRecord> elog;
      std::size_t out_idx = 0;
      run_with_observer(
          init, config.final_time, solver_config(config, row.eps), times,
          [&](const ConservedState& s) {
            const EmpiricalMeasure dirac = EmpiricalMeasure::dirac(s);
            const RelEnergyParts parts =
                relative_energy(dirac, rho_bar_field, v_ref.at(out_idx), config.eos);
            if (parts.total >= row.sup_rel_energy) {
              row.sup_rel_energy = parts.total;
              row.kinetic_part = parts.kinetic;
              row.potential_part = parts.potential;
              row.ess_part = parts.ess;
              row.res_part = parts.res;
            }
            row.sup_potential_part = std::max(row.sup_potential_part, parts.potential);
            row.defect_d =
                std::max(row.defect_d, dissipation_defect(e0, total_energy(s, config.eos)));
            ++out_idx;
          },
          &elog);
      row.steps = elog.empty() ? 0 : elog.back().step;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    row.wall_time_s = wall_seconds(t0);
  };
  run_rows_parallel(config.threads, report.rows.size(), work);

  std::vector<double> xs, ys;
  for (const auto& r : report.rows)
    if (!r.failed) {
      xs.push_back(r.eps);
      ys.push_back(r.sup_rel_energy);
    }
  report.fitted_order = fit_log_slope(xs, ys);
  return report;
}

SweepReport mach_sweep_illprepared(const SweepConfig& config) {
  config.validate_common();
  if (config.grid.dim != 2)
    throw std::invalid_argument("mach_sweep_illprepared: grid must be 2D");
  const std::vector<double> times = config.resolved_output_times();

  // acoustic wrap-free window must hold for every eps
  if (config.enforce_wrap_window) {
    const double lmin = std::min(config.grid.lengths[0], config.grid.lengths[1]);
    const double c_ref = std::sqrt(pressure_derivative(config.eos, config.eos.rho_bar));
    const double geom = 0.5 * lmin - 0.5 * config.subset.diameter(config.grid.dim);
    for (double eps : config.eps_list) {
      const double window = geom * eps / c_ref;
      if (!(times.back() < window))
        throw std::invalid_argument(
            "mach_sweep_illprepared: output times violate the acoustic wrap-free window at eps=" +
            std::to_string(eps) + " (maximal admissible time " + std::to_string(window) + ")");
    }
  }

  const IncompressibleState omega0(config.grid, make_vorticity(config.grid, config.v0));
  const auto incomp_states = incomp_run(omega0, config.final_time, times);
  std::vector<VectorField> v_ref;
  v_ref.reserve(incomp_states.size());
  for (const auto& st : incomp_states)
    v_ref.push_back(velocity_from_vorticity(config.grid, st.omega));

  const Field rho_bar_field(config.grid.cell_count(), config.eos.rho_bar);
  const double t_min = config.delta_time_fraction * config.final_time;

  SweepReport report;
  report.ill_prepared = true;
  report.rows.resize(config.eps_list.size());
  auto work = [&](std::size_t idx) {
    SweepRow& row = report.rows[idx];
    row.eps = config.eps_list[idx];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [init, acoustic0] = illprepared_init(config.grid, config.eos, config.v0,
                                                config.s0, config.phi0, row.eps);
      const double e0 = total_energy(init, config.eos);
      std::vector<EnergyRecord> elog;
      std::size_t out_idx = 0;
      run_with_observer(
          init, config.final_time, solver_config(config, row.eps), times,
          [&](const ConservedState& s) {
            const double t = times.at(out_idx);
            row.defect_d =
                std::max(row.defect_d, dissipation_defect(e0, total_energy(s, config.eos)));
            if (t > t_min) {
              const EmpiricalMeasure dirac = EmpiricalMeasure::dirac(s);
              const RelEnergyParts plain = relative_energy(dirac, rho_bar_field,
                                                           v_ref.at(out_idx), config.eos,
                                                           config.subset);
              if (plain.total >= row.sup_rel_energy) {
                row.sup_rel_energy = plain.total;
                row.kinetic_part = plain.kinetic;
                row.potential_part = plain.potential;
                row.ess_part = plain.ess;
                row.res_part = plain.res;
              }
              row.sup_potential_part = std::max(row.sup_potential_part, plain.potential);

              const AcousticState wave = acoustic_step_exact(acoustic0, t);
              Field r_corr(rho_bar_field);
              VectorField u_corr(v_ref.at(out_idx));
              for (std::size_t c = 0; c < r_corr.size(); ++c) {
                r_corr[c] += row.eps * wave.s[c];
                u_corr[0][c] += wave.grad_phi[0][c];
                u_corr[1][c] += wave.grad_phi[1][c];
              }
              const RelEnergyParts corr =
                  relative_energy(dirac, r_corr, u_corr, config.eos, config.subset);
              if (corr.total >= row.corrected_sup) {
                row.corrected_sup = corr.total;
                row.corrected_kinetic = corr.kinetic;
                row.corrected_potential = corr.potential;
                row.corrected_ess = corr.ess;
                row.corrected_res = corr.res;
              }
            }
            ++out_idx;
          },
          &elog);
      row.steps = elog.empty() ? 0 : elog.back().step;
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    row.wall_time_s = wall_seconds(t0);
  };
  run_rows_parallel(config.threads, report.rows.size(), work);

  std::vector<double> xs, ys, yc;
  for (const auto& r : report.rows)
    if (!r.failed) {
      xs.push_back(r.eps);
      ys.push_back(r.sup_rel_energy);
      yc.push_back(r.corrected_sup);
    }
  report.fitted_order = fit_log_slope(xs, ys);
  report.fitted_order_corrected = fit_log_slope(xs, yc);
  return report;
}

std::vector<double> pairwise_density_variance(const EmpiricalMeasure& measure) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < measure.size(); ++k) {
    const Field& a = measure.members[k].rho;
    const Field& b = measure.members[k + 1].rho;
    long double acc = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
      const double d = a[c] - b[c];
      acc += 0.25 * d * d;  // variance of the equal-weight two-point measure
    }
    out.push_back(static_cast<double>(acc) / static_cast<double>(a.size()));
  }
  return out;
}

}  // namespace machlab
