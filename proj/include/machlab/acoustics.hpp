#pragma once

#include <vector>

#include "machlab/eos.hpp"
#include "machlab/grid.hpp"

namespace machlab {

/// State of the linear acoustic system: density fluctuation s and the
/// gradient part grad Phi of the velocity, with wave speed
/// sqrt(p'(rho_bar))/eps. The solver is exact per Fourier mode, so both the
/// quadratic acoustic energy and every Sobolev energy are conserved to
/// roundoff and dispersion can be measured free of integrator error.
struct AcousticState {
  TorusGrid grid;
  Field s;
  VectorField grad_phi;
  double eps = 1.0;
  double rho_bar = 1.0;
  double c2 = 1.0;  // p'(rho_bar)
  double time = 0.0;

  AcousticState() = default;
  AcousticState(const TorusGrid& g, Field s_, VectorField grad_phi_, double eps_,
                const EosModel& eos);
};

/// Advances by diagonalizing the 2x2 system per mode; exact in time. The
/// gradient structure of grad_phi is preserved (solenoidal content of the
/// input is projected out, which the construction keeps at roundoff).
AcousticState acoustic_step_exact(const AcousticState& state, double dt);

/// int [ p'(rho_bar) s^2 + rho_bar^2 |grad Phi|^2 ] dx.
double acoustic_energy(const AcousticState& state);

/// Spectral W^{k,2} energy sum_k (1 + |k|^2)^k [ p' |s_hat|^2 +
/// rho_bar^2 |grad Phi_hat|^2 ], normalized to match acoustic_energy at k=0.
double sobolev_energy(const AcousticState& state, int k);

struct DecaySample {
  double time = 0.0;
  double tau_over_eps = 0.0;
  double sup_s_sq = 0.0;
  double sup_grad_phi_sq = 0.0;
};

struct DecayResult {
  std::vector<DecaySample> samples;
  double fitted_slope = 0.0;  // of log(sup_s^2 + sup_gphi^2) vs log(1 + t/eps)
  double window_max_time = 0.0;
};

/// Samples sup-norms on the compact subset B at the given times and fits the
/// decay exponent against (1 + t/eps). Sample times must stay inside the
/// wrap-free window t < (L/2 - diam(B)/2) * eps / sqrt(p'(rho_bar)); a
/// violation reports the maximal admissible time.
DecayResult decay_experiment(const AcousticState& init, const SubBox& subset,
                             const std::vector<double>& sample_times);

}  // namespace machlab
