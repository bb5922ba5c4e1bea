#pragma once

#include <optional>
#include <string>
#include <vector>

#include "machlab/comp_euler.hpp"
#include "machlab/eos.hpp"
#include "machlab/grid.hpp"
#include "machlab/initial_data.hpp"
#include "machlab/measures.hpp"

namespace machlab {

struct SolverOptions {
  double cfl = 0.45;
  TimeIntegrator integrator = TimeIntegrator::SspRk2;
  bool low_mach_fix = false;
  double rho_floor = 1e-10;
};

struct SweepConfig {
  EosModel eos;
  TorusGrid grid;
  std::vector<double> eps_list;  // strictly decreasing, in (0, 1]
  double final_time = 0.5;
  int output_count = 10;                    // used when output_times is empty
  std::vector<double> output_times;         // explicit override
  SolverOptions solver;
  int threads = 1;
  VelocitySpec v0;
  // ill-prepared extras
  GaussianSpec s0;
  GaussianSpec phi0;
  SubBox subset = SubBox::centered({0.5, 0.5});
  double delta_time_fraction = 0.2;  // diagnostics restricted to t > fraction * T
  // The wrap-free window guards the large-box approximation of the whole
  // space. The small-torus contrast experiment keeps the wrapping acoustics
  // on purpose and turns the guard off.
  bool enforce_wrap_window = true;

  std::vector<double> resolved_output_times() const;
  void validate_common() const;
};

struct SweepRow {
  double eps = 0.0;
  bool failed = false;
  std::string error;
  double sup_rel_energy = 0.0;
  double kinetic_part = 0.0;
  double potential_part = 0.0;
  double ess_part = 0.0;
  double res_part = 0.0;
  double sup_potential_part = 0.0;  // sup over output times of the potential part alone
  double defect_d = 0.0;
  double wall_time_s = 0.0;
  long steps = 0;
  // ill-prepared sweep only: diagnostics against the acoustic-corrected reference
  double corrected_sup = 0.0;
  double corrected_kinetic = 0.0;
  double corrected_potential = 0.0;
  double corrected_ess = 0.0;
  double corrected_res = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double fitted_order = 0.0;            // slope of log sup_rel_energy vs log eps
  double fitted_order_corrected = 0.0;  // ill-prepared sweep only
  bool ill_prepared = false;
};

/// Well-prepared Mach sweep on the torus: for each eps the compressible
/// solver runs from (rho_bar, rho_bar v0), the incompressible reference runs
/// once from v0, and the relative energy of the Dirac solution measure
/// against (rho_bar, v(t)) is tracked over the shared output times.
SweepReport mach_sweep_wellprepared(const SweepConfig& config);

/// Ill-prepared sweep on a large box: additionally launches the acoustic
/// system from (s0, grad Phi0) and records, restricted to the compact subset
/// and to output times past the initial layer, both the plain relative
/// energy against (rho_bar, v) and the corrected one against
/// (rho_bar + eps s_eps, v + grad Phi_eps). Output times must respect the
/// acoustic wrap-free window for every eps in the sweep.
SweepReport mach_sweep_illprepared(const SweepConfig& config);

/// Adjacent-member density variance of an ensemble (mean over cells of the
/// two-point variance); decays as the viscosities of the pair shrink.
std::vector<double> pairwise_density_variance(const EmpiricalMeasure& measure);

}  // namespace machlab
