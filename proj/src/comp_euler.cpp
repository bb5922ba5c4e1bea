#include "machlab/comp_euler.hpp"

#include <algorithm>
#include <cmath>

#include "machlab/operators.hpp"

namespace machlab {

namespace {

inline double pres(const EosModel& eos, double rho) {
  if (eos.gamma == 2.0) return eos.a * rho * rho;
  return eos.a * std::pow(rho, eos.gamma);
}

inline double sound_speed(const EosModel& eos, double rho) {
  if (eos.gamma == 2.0) return std::sqrt(2.0 * eos.a * rho);
  return std::sqrt(eos.a * eos.gamma * std::pow(rho, eos.gamma - 1.0));
}

struct Rhs {
  Field rho;
  VectorField mom;
  explicit Rhs(const TorusGrid& g) : rho(g.cell_count(), 0.0), mom(g) {}
  void clear(const TorusGrid& g) {
    std::fill(rho.begin(), rho.end(), 0.0);
    for (int d = 0; d < g.dim; ++d) std::fill(mom[d].begin(), mom[d].end(), 0.0);
  }
};

inline std::array<double, 3> interface_flux(double rho_l, double mx_l, double my_l,
                                            double rho_r, double mx_r, double my_r,
                                            int dim, int ncomp, double eps,
                                            const EosModel& eos, bool low_mach_fix) {
  const double ul[2] = {mx_l / rho_l, my_l / rho_l};
  const double ur[2] = {mx_r / rho_r, my_r / rho_r};
  const double pl = pres(eos, rho_l) / (eps * eps);
  const double pr = pres(eos, rho_r) / (eps * eps);
  const double cl = sound_speed(eos, rho_l) / eps;
  const double cr = sound_speed(eos, rho_r) / eps;
  const double lambda = std::max(std::abs(ul[dim]) + cl, std::abs(ur[dim]) + cr);

  std::array<double, 3> f{};
  const double ml[2] = {mx_l, my_l};
  const double mr[2] = {mx_r, my_r};
  f[0] = 0.5 * (ml[dim] + mr[dim]) - 0.5 * lambda * (rho_r - rho_l);
  for (int i = 0; i < ncomp; ++i) {
    double central = 0.5 * (ml[i] * ul[dim] + mr[i] * ur[dim]);
    if (i == dim) central += 0.5 * (pl + pr);
    double dissipation;
    if (low_mach_fix) {
      // split the momentum jump into a density-carried and a velocity-carried
      // part and scale the latter by the local Mach number
      const double ubar = 0.5 * (ul[i] + ur[i]);
      const double rbar = 0.5 * (rho_l + rho_r);
      const double speed_l = ncomp == 2 ? std::hypot(ul[0], ul[1]) : std::abs(ul[0]);
      const double speed_r = ncomp == 2 ? std::hypot(ur[0], ur[1]) : std::abs(ur[0]);
      const double theta = std::min(1.0, std::max(speed_l, speed_r) / std::min(cl, cr));
      dissipation = 0.5 * lambda * (ubar * (rho_r - rho_l) + theta * rbar * (ur[i] - ul[i]));
    } else {
      dissipation = 0.5 * lambda * (mr[i] - ml[i]);
    }
    f[1 + i] = central - dissipation;
  }
  return f;
}

// flux divergence plus optional viscous term
void compute_rhs(const ConservedState& s, const CompSolverConfig& cfg, Rhs& rhs) {
  const TorusGrid& g = s.grid;
  const int nx = g.cells[0];
  const int ny = g.dim == 2 ? g.cells[1] : 1;
  const int ncomp = g.dim;
  rhs.clear(g);

  // x-direction sweeps
  {
    const double inv_dx = 1.0 / g.dx(0);
    std::vector<std::array<double, 3>> flux(nx);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int ip = (i + 1) % nx;
        const std::size_t c = g.index(i, j), cp = g.index(ip, j);
        flux[i] = interface_flux(s.rho[c], s.mom[0][c], ncomp == 2 ? s.mom[1][c] : 0.0,
                                 s.rho[cp], s.mom[0][cp], ncomp == 2 ? s.mom[1][cp] : 0.0,
                                 0, ncomp, s.eps, cfg.eos, cfg.low_mach_fix);
      }
      for (int i = 0; i < nx; ++i) {
        const int im = (i + nx - 1) % nx;
        const std::size_t c = g.index(i, j);
        rhs.rho[c] -= (flux[i][0] - flux[im][0]) * inv_dx;
        rhs.mom[0][c] -= (flux[i][1] - flux[im][1]) * inv_dx;
        if (ncomp == 2) rhs.mom[1][c] -= (flux[i][2] - flux[im][2]) * inv_dx;
      }
    }
  }

  // y-direction sweeps
  if (g.dim == 2) {
    const double inv_dy = 1.0 / g.dx(1);
    std::vector<std::array<double, 3>> flux(ny);
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        const int jp = (j + 1) % ny;
        const std::size_t c = g.index(i, j), cp = g.index(i, jp);
        flux[j] = interface_flux(s.rho[c], s.mom[0][c], s.mom[1][c],
                                 s.rho[cp], s.mom[0][cp], s.mom[1][cp],
                                 1, 2, s.eps, cfg.eos, cfg.low_mach_fix);
      }
      for (int j = 0; j < ny; ++j) {
        const int jm = (j + ny - 1) % ny;
        const std::size_t c = g.index(i, j);
        rhs.rho[c] -= (flux[j][0] - flux[jm][0]) * inv_dy;
        rhs.mom[0][c] -= (flux[j][1] - flux[jm][1]) * inv_dy;
        rhs.mom[1][c] -= (flux[j][2] - flux[jm][2]) * inv_dy;
      }
    }
  }

  if (cfg.viscosity_delta > 0.0) {
    VectorField u(g);
    for (int d = 0; d < g.dim; ++d)
      for (std::size_t c = 0; c < g.cell_count(); ++c) u[d][c] = s.mom[d][c] / s.rho[c];
    const Field divu = div_fd(g, u);
    const VectorField grad_div = grad_fd(g, divu);
    for (int d = 0; d < g.dim; ++d) {
      const Field lap = laplacian_fd(g, u[d]);
      for (std::size_t c = 0; c < g.cell_count(); ++c)
        rhs.mom[d][c] += cfg.viscosity_delta * (lap[c] + grad_div[d][c]);
    }
  }
}

void axpy_state(const ConservedState& base, double dt, const Rhs& rhs, double t_after,
                const CompSolverConfig& cfg, ConservedState& out) {
  const TorusGrid& g = base.grid;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    out.rho[c] = base.rho[c] + dt * rhs.rho[c];
    if (out.rho[c] < cfg.rho_floor) throw PositivityError(t_after, c);
  }
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t c = 0; c < g.cell_count(); ++c)
      out.mom[d][c] = base.mom[d][c] + dt * rhs.mom[d][c];
}

}  // namespace

std::array<double, 3> rusanov_flux(const SideState& left, const SideState& right, int dim,
                                   double eps, const EosModel& eos, bool low_mach_fix) {
  if (!(left.rho > 0.0 && right.rho > 0.0))
    throw std::domain_error("rusanov_flux: non-positive density");
  return interface_flux(left.rho, left.mom[0], left.mom[1],
                        right.rho, right.mom[0], right.mom[1],
                        dim, 2, eps, eos, low_mach_fix);
}

double max_stable_dt(const ConservedState& state, const CompSolverConfig& config) {
  const TorusGrid& g = state.grid;
  double dt = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double cs = sound_speed(config.eos, state.rho[c]) / state.eps;
    for (int d = 0; d < g.dim; ++d) {
      const double lambda = std::abs(state.mom[d][c] / state.rho[c]) + cs;
      dt = std::min(dt, g.dx(d) / lambda);
    }
  }
  dt *= config.cfl;
  if (config.viscosity_delta > 0.0)
    for (int d = 0; d < g.dim; ++d)
      dt = std::min(dt, config.cfl * g.dx(d) * g.dx(d) / (4.0 * config.viscosity_delta));
  return dt;
}

ConservedState step(const ConservedState& state, double dt, const CompSolverConfig& config) {
  const TorusGrid& g = state.grid;
  Rhs rhs(g);
  ConservedState stage(g, state.eps);
  compute_rhs(state, config, rhs);
  axpy_state(state, dt, rhs, state.time + dt, config, stage);
  stage.time = state.time + dt;

  if (config.integrator == TimeIntegrator::ForwardEuler) return stage;

  // SSP-RK2 (Heun): u^{n+1} = (u^n + stage + dt L(stage)) / 2
  compute_rhs(stage, config, rhs);
  ConservedState next(g, state.eps);
  next.time = state.time + dt;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    next.rho[c] = 0.5 * (state.rho[c] + stage.rho[c] + dt * rhs.rho[c]);
    if (next.rho[c] < config.rho_floor) throw PositivityError(next.time, c);
  }
  for (int d = 0; d < g.dim; ++d)
    for (std::size_t c = 0; c < g.cell_count(); ++c)
      next.mom[d][c] = 0.5 * (state.mom[d][c] + stage.mom[d][c] + dt * rhs.mom[d][c]);
  return next;
}

double total_energy(const ConservedState& state, const EosModel& eos) {
  return energy_breakdown(state, eos).total;
}

EnergyRecord energy_breakdown(const ConservedState& state, const EosModel& eos) {
  const TorusGrid& g = state.grid;
  const double vol = g.cell_volume();
  const double inv_eps2 = 1.0 / (state.eps * state.eps);
  long double kin = 0.0, pot = 0.0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    double m2 = state.mom[0][c] * state.mom[0][c];
    if (g.dim == 2) m2 += state.mom[1][c] * state.mom[1][c];
    kin += 0.5 * m2 / state.rho[c];
    pot += rel_potential(eos, state.rho[c], eos.rho_bar);
  }
  EnergyRecord rec;
  rec.time = state.time;
  rec.kinetic = static_cast<double>(kin) * vol;
  rec.potential_over_eps2 = static_cast<double>(pot) * vol * inv_eps2;
  rec.total = rec.kinetic + rec.potential_over_eps2;
  return rec;
}

namespace {

void run_impl(const ConservedState& init, double T, const CompSolverConfig& config,
              const std::vector<double>& output_times, bool dense,
              const std::function<void(const ConservedState&)>& on_output,
              std::vector<EnergyRecord>* energy_log) {
  if (!(T >= 0.0)) throw std::invalid_argument("run: final time must be nonnegative");
  init.validate_positive(config.rho_floor);

  std::vector<double> times(output_times);
  std::sort(times.begin(), times.end());
  for (double t : times)
    if (t < 0.0 || t > T) throw std::invalid_argument("run: output times must lie in [0, T]");

  ConservedState state(init);
  const double t_eps = 1e-12 * std::max(1.0, T);
  std::size_t next_out = 0;
  auto emit_due = [&]() {
    while (next_out < times.size() && times[next_out] <= state.time + t_eps) {
      on_output(state);
      ++next_out;
    }
  };
  if (times.empty() && !dense) on_output(state);
  emit_due();

  long step_no = 0;
  if (energy_log) {
    EnergyRecord rec = energy_breakdown(state, config.eos);
    rec.step = 0;
    rec.dt = 0.0;
    energy_log->push_back(rec);
  }
  while (state.time < T - t_eps) {
    double dt = max_stable_dt(state, config);
    double target = T;
    if (next_out < times.size()) target = std::min(target, times[next_out]);
    if (state.time + dt > target) dt = target - state.time;
    state = step(state, dt, config);
    ++step_no;
    if (energy_log) {
      EnergyRecord rec = energy_breakdown(state, config.eos);
      rec.step = step_no;
      rec.dt = dt;
      energy_log->push_back(rec);
    }
    if (dense)
      on_output(state);
    else
      emit_due();
  }
}

}  // namespace

Trajectory run(const ConservedState& init, double T, const CompSolverConfig& config,
               const std::vector<double>& output_times) {
  Trajectory traj;
  run_impl(init, T, config, output_times, false,
           [&](const ConservedState& s) { traj.snapshots.push_back(s); }, &traj.energy_log);
  return traj;
}

void run_with_observer(const ConservedState& init, double T, const CompSolverConfig& config,
                       const std::vector<double>& output_times,
                       const std::function<void(const ConservedState&)>& on_output,
                       std::vector<EnergyRecord>* energy_log) {
  run_impl(init, T, config, output_times, false, on_output, energy_log);
}

Trajectory run_dense(const ConservedState& init, double T, const CompSolverConfig& config) {
  Trajectory traj;
  traj.snapshots.push_back(init);
  run_impl(init, T, config, {}, true,
           [&](const ConservedState& s) {
             if (s.time > init.time) traj.snapshots.push_back(s);
           },
           &traj.energy_log);
  return traj;
}

namespace {

void check_support(double support_end, const Trajectory& traj) {
  if (traj.snapshots.empty()) throw std::invalid_argument("weak_residual: empty trajectory");
  const double T = traj.snapshots.back().time;
  if (!(support_end > 0.0) || support_end > T)
    throw std::invalid_argument(
        "weak_residual: test function must be compactly supported in time within [0, T)");
}

}  // namespace

double weak_residual_continuity(const Trajectory& traj, const ScalarTestFn& fn) {
  check_support(fn.support_end, traj);
  const TorusGrid& g = traj.snapshots.front().grid;
  const double vol = g.cell_volume();
  const int nx = g.cells[0];
  const int ny = g.dim == 2 ? g.cells[1] : 1;

  long double acc = 0.0;
  for (std::size_t n = 0; n + 1 < traj.snapshots.size(); ++n) {
    const ConservedState& a = traj.snapshots[n];
    const ConservedState& b = traj.snapshots[n + 1];
    const double dt = b.time - a.time;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        const std::array<double, 2> x{g.center(0, i), g.dim == 2 ? g.center(1, j) : 0.0};
        const std::size_t c = g.index(i, j);
        // time-derivative term via the exact increment of the test function
        acc += 0.5 * (a.rho[c] + b.rho[c]) * (fn.value(b.time, x) - fn.value(a.time, x));
        const auto ga = fn.grad(a.time, x);
        const auto gb = fn.grad(b.time, x);
        double fa = a.mom[0][c] * ga[0], fb = b.mom[0][c] * gb[0];
        if (g.dim == 2) {
          fa += a.mom[1][c] * ga[1];
          fb += b.mom[1][c] * gb[1];
        }
        acc += 0.5 * dt * (fa + fb);
      }
    }
  }
  const ConservedState& init = traj.snapshots.front();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const std::array<double, 2> x{g.center(0, i), g.dim == 2 ? g.center(1, j) : 0.0};
      acc += init.rho[g.index(i, j)] * fn.value(init.time, x);
    }
  return std::abs(static_cast<double>(acc) * vol);
}

double weak_residual_momentum(const Trajectory& traj, const VectorTestFn& fn,
                              const EosModel& eos) {
  check_support(fn.support_end, traj);
  const TorusGrid& g = traj.snapshots.front().grid;
  const double vol = g.cell_volume();
  const int nx = g.cells[0];
  const int ny = g.dim == 2 ? g.cells[1] : 1;
  const double eps = traj.snapshots.front().eps;
  const double inv_eps2 = 1.0 / (eps * eps);

  auto integrand = [&](const ConservedState& s, double t, const std::array<double, 2>& x,
                       std::size_t c) {
    const auto gr = fn.grad(t, x);
    double val = 0.0;
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j)
        val += s.mom[i][c] * s.mom[j][c] / s.rho[c] * gr[i][j];
    double divphi = gr[0][0];
    if (g.dim == 2) divphi += gr[1][1];
    val += pres(eos, s.rho[c]) * inv_eps2 * divphi;
    return val;
  };

  long double acc = 0.0;
  for (std::size_t n = 0; n + 1 < traj.snapshots.size(); ++n) {
    const ConservedState& a = traj.snapshots[n];
    const ConservedState& b = traj.snapshots[n + 1];
    const double dt = b.time - a.time;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        const std::array<double, 2> x{g.center(0, i), g.dim == 2 ? g.center(1, j) : 0.0};
        const std::size_t c = g.index(i, j);
        const auto va = fn.value(a.time, x);
        const auto vb = fn.value(b.time, x);
        for (int d = 0; d < g.dim; ++d)
          acc += 0.5 * (a.mom[d][c] + b.mom[d][c]) * (vb[d] - va[d]);
        acc += 0.5 * dt * (integrand(a, a.time, x, c) + integrand(b, b.time, x, c));
      }
    }
  }
  const ConservedState& init = traj.snapshots.front();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const std::array<double, 2> x{g.center(0, i), g.dim == 2 ? g.center(1, j) : 0.0};
      const auto v0 = fn.value(init.time, x);
      for (int d = 0; d < g.dim; ++d) acc += init.mom[d][g.index(i, j)] * v0[d];
    }
  return std::abs(static_cast<double>(acc) * vol);
}

}  // namespace machlab
