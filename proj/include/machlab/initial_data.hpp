#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "machlab/acoustics.hpp"
#include "machlab/eos.hpp"
#include "machlab/grid.hpp"

namespace machlab {

/// Named analytic solenoidal velocity fields. Every kind is built through a
/// streamfunction (or is closed-form solenoidal), so the spectral divergence
/// vanishes to roundoff.
struct VelocitySpec {
  enum class Kind { Zero, TaylorGreen, VortexPair, BandLimitedRandom };
  Kind kind = Kind::Zero;
  double amplitude = 1.0;
  double width = 0.25;        // vortex core radius (vortex-pair)
  double separation = 1.0;    // center distance (vortex-pair)
  int k_min = 1;              // band (band-limited-random)
  int k_max = 4;
  std::uint64_t seed = 1;

  static VelocitySpec zero() { return {}; }
  static VelocitySpec taylor_green(double amplitude = 1.0);
  static VelocitySpec vortex_pair(double amplitude = 1.0, double width = 0.25,
                                  double separation = 1.0);
  static VelocitySpec band_limited_random(double amplitude, int k_min, int k_max,
                                          std::uint64_t seed);
  static VelocitySpec parse(const std::string& name);
};

struct GaussianSpec {
  double amplitude = 0.0;
  double width = 0.2;
  std::array<double, 2> center{0.0, 0.0};
};

/// Isotropic Gaussian bump on the torus (periodized by the nearest image).
Field gaussian_field(const TorusGrid& grid, const GaussianSpec& spec);

VectorField make_velocity(const TorusGrid& grid, const VelocitySpec& spec);

/// Vorticity of the named field (2D), mean-free by construction.
Field make_vorticity(const TorusGrid& grid, const VelocitySpec& spec);

/// Well-prepared data: rho == rho_bar, m = rho_bar v0 with solenoidal v0,
/// so the initial relative energy against (rho_bar, v0) vanishes for every
/// eps. Throws if the spec does not produce a solenoidal field.
ConservedState wellprepared_init(const TorusGrid& grid, const EosModel& eos,
                                 const VelocitySpec& v0, double eps);

/// Ill-prepared data: rho = rho_bar + eps s0, m = rho (v0 + grad Phi0),
/// paired with the acoustic state carrying (s0, grad Phi0). Throws if the
/// density fluctuation drives rho nonpositive.
std::pair<ConservedState, AcousticState> illprepared_init(const TorusGrid& grid,
                                                          const EosModel& eos,
                                                          const VelocitySpec& v0,
                                                          const GaussianSpec& s0,
                                                          const GaussianSpec& phi0,
                                                          double eps);

/// Generic smooth data: rho = rho_bar + rho_bump, u = velocity_bump along x.
/// Works in 1D and 2D; used by the energy audit, the residual study and the
/// viscous ensembles.
ConservedState smooth_bump_init(const TorusGrid& grid, const EosModel& eos,
                                const GaussianSpec& rho_bump, const GaussianSpec& velocity_bump,
                                double eps);

}  // namespace machlab
