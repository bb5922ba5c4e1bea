#pragma once

#include <optional>
#include <string>
#include <vector>

#include "machlab/sweeps.hpp"

namespace machlab {

/// Acceptance thresholds checked by the CLI after a run; every field is
/// optional in the config file and skipped when absent.
struct AcceptanceThresholds {
  std::optional<bool> require_strictly_decreasing;       // sup_rel_energy across eps
  std::optional<double> potential_part_bound;            // common constant for sup potential
  std::optional<bool> require_plain_decreasing;          // ill sweep, plain diagnostic
  std::optional<bool> require_corrected_decreasing;      // ill sweep, corrected diagnostic
  std::optional<double> min_floor_ratio;                 // min/max of sup_rel_energy across eps
  std::optional<double> mass_rel_tol;                    // energy-check
  std::optional<double> energy_step_rel_slack;           // energy-check
  std::optional<double> min_order;                       // residual study
  std::optional<double> expected_slope;                  // acoustic decay
  std::optional<double> slope_tol;
  std::optional<bool> require_defect_monotone;           // ensemble
  std::optional<bool> require_variance_decreasing;
};

struct EnsembleConfig {
  std::vector<double> deltas;  // positive, decreasing
  GaussianSpec rho_bump;       // smooth density bump on top of rho_bar
  GaussianSpec velocity_bump;  // smooth 1D velocity profile
};

struct DecayConfig {
  double eps = 0.1;
  GaussianSpec s0;
  GaussianSpec phi0;
  std::vector<double> sample_times;
};

struct ExperimentConfig {
  SweepConfig sweep;           // eos/grid/eps/T/data/solver/threads
  std::string data_kind;       // "well-prepared" or "ill-prepared"
  EnsembleConfig ensemble;
  DecayConfig decay;
  AcceptanceThresholds acceptance;
  std::string out_dir = "out";
};

/// Parses the documented JSON schema; unknown keys are rejected so config
/// typos fail loudly.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

}  // namespace machlab
