#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "machlab/eos.hpp"
#include "machlab/grid.hpp"

namespace machlab {

enum class TimeIntegrator { ForwardEuler, SspRk2 };

/// Explicit finite-volume solver configuration for the Mach-rescaled
/// barotropic Euler system. The flux is Rusanov with wave-speed bound
/// |u| + sqrt(p'(rho))/eps; time steps therefore shrink like eps.
/// `low_mach_fix` switches on an all-speed variant that scales the
/// velocity-jump part of the momentum dissipation by the local Mach
/// number, removing the O(dx/eps) velocity diffusion of the plain flux
/// on fixed grids (the density-jump dissipation is untouched).
struct CompSolverConfig {
  double cfl = 0.45;
  TimeIntegrator integrator = TimeIntegrator::SspRk2;
  double viscosity_delta = 0.0;  // coefficient of delta (lap u + grad div u)
  double rho_floor = 1e-10;      // positivity abort threshold
  EosModel eos;
  double eps = 1.0;
  bool low_mach_fix = false;
};

/// Density went below rho_floor; carries the offending time and flat cell.
struct PositivityError : std::runtime_error {
  double time;
  std::size_t cell;
  PositivityError(double t, std::size_t c)
      : std::runtime_error("density positivity lost at t=" + std::to_string(t) +
                           ", cell " + std::to_string(c)),
        time(t), cell(c) {}
};

struct EnergyRecord {
  long step = 0;
  double time = 0.0;
  double dt = 0.0;
  double total = 0.0;
  double kinetic = 0.0;
  double potential_over_eps2 = 0.0;
};

struct Trajectory {
  std::vector<ConservedState> snapshots;
  std::vector<EnergyRecord> energy_log;
};

struct SideState {
  double rho;
  std::array<double, 2> mom;
};

/// Interface Rusanov flux along dimension `dim` for (rho, mom). Consistent
/// with the analytic flux (rho u, rho u x u + p/eps^2 I); the left/right
/// interface states are the reconstruction hook (cell averages give the
/// first-order scheme).
std::array<double, 3> rusanov_flux(const SideState& left, const SideState& right, int dim,
                                   double eps, const EosModel& eos, bool low_mach_fix = false);

/// cfl * min over cells and dims of dx / (|u_d| + sqrt(p'(rho))/eps),
/// additionally capped by cfl * dx^2 / (4 delta) when viscosity is on.
double max_stable_dt(const ConservedState& state, const CompSolverConfig& config);

/// One explicit step. Conserves total mass to roundoff; throws
/// PositivityError if any updated density falls below rho_floor.
ConservedState step(const ConservedState& state, double dt, const CompSolverConfig& config);

/// Total energy sum_cells vol * [ |m|^2/(2 rho) + H(rho|rho_bar)/eps^2 ].
double total_energy(const ConservedState& state, const EosModel& eos);
EnergyRecord energy_breakdown(const ConservedState& state, const EosModel& eos);

/// Advances to T, snapshotting at the requested output times (which are hit
/// exactly by shortening steps). The energy log records every step.
Trajectory run(const ConservedState& init, double T, const CompSolverConfig& config,
               const std::vector<double>& output_times);

/// Observer form of run(): invokes `on_output` at t=0 (if requested), at
/// every requested output time and at T, without storing snapshots.
void run_with_observer(const ConservedState& init, double T, const CompSolverConfig& config,
                       const std::vector<double>& output_times,
                       const std::function<void(const ConservedState&)>& on_output,
                       std::vector<EnergyRecord>* energy_log = nullptr);

/// Records a snapshot after every step (for space-time quadratures).
Trajectory run_dense(const ConservedState& init, double T, const CompSolverConfig& config);

struct ScalarTestFn {
  std::function<double(double, std::array<double, 2>)> value;
  std::function<std::array<double, 2>(double, std::array<double, 2>)> grad;
  double support_end = 0.0;  // value vanishes for t >= support_end
};

struct VectorTestFn {
  std::function<std::array<double, 2>(double, std::array<double, 2>)> value;
  // grad[i][j] = d phi_i / d x_j
  std::function<std::array<std::array<double, 2>, 2>(double, std::array<double, 2>)> grad;
  double support_end = 0.0;
};

/// Space-time quadrature of the continuity weak form over a dense
/// trajectory, with the solution as a Dirac measure and zero concentration
/// defects; returns the absolute residual.
double weak_residual_continuity(const Trajectory& traj, const ScalarTestFn& fn);

/// Same for the momentum weak form (pressure enters as p/eps^2).
double weak_residual_momentum(const Trajectory& traj, const VectorTestFn& fn,
                              const EosModel& eos);

}  // namespace machlab
