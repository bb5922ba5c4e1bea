#pragma once

#include <vector>

#include "machlab/grid.hpp"
#include "machlab/operators.hpp"

namespace machlab {

/// 2D incompressible Euler in vorticity-streamfunction form, advanced by a
/// dealiased pseudo-spectral RK4. The velocity recovered from the vorticity
/// is exactly solenoidal, which is what the relative-energy diagnostics
/// need from their reference field.
struct IncompressibleState {
  TorusGrid grid;
  Field omega;
  double time = 0.0;

  IncompressibleState() = default;
  IncompressibleState(const TorusGrid& g, Field w) : grid(g), omega(std::move(w)) {
    if (g.dim != 2) throw std::invalid_argument("IncompressibleState: grid must be 2D");
    if (omega.size() != g.cell_count())
      throw std::invalid_argument("IncompressibleState: vorticity shape mismatch");
  }
};

/// Biot-Savart on the torus: returns v with curl v = omega and div v = 0
/// spectrally. Throws if omega has a nonzero mean (torus compatibility).
VectorField velocity_from_vorticity(const TorusGrid& grid, const Field& omega);

Field streamfunction_from_vorticity(const TorusGrid& grid, const Field& omega);

/// Dealiased advection term (v . grad) v.
VectorField advection_term(const TorusGrid& grid, const VectorField& v);

/// Zero-mean pressure solving lap Pi = -div div (v x v) spectrally.
Field pressure_from_velocity(const TorusGrid& grid, const VectorField& v);
Field pressure_recover(const IncompressibleState& state);

/// One RK4 step of the vorticity equation with 2/3-rule dealiasing.
IncompressibleState incomp_step(const IncompressibleState& state, double dt);

double incomp_max_dt(const IncompressibleState& state, double cfl = 0.4);

struct IncompRunOptions {
  double cfl = 0.4;
  double dt_cap = 1e-3;  // keeps the RK4 invariant drift near roundoff
};

std::vector<IncompressibleState> incomp_run(const IncompressibleState& init, double T,
                                            const std::vector<double>& output_times,
                                            const IncompRunOptions& opts = {});

double kinetic_energy(const TorusGrid& grid, const VectorField& v);
double enstrophy(const TorusGrid& grid, const Field& omega);

}  // namespace machlab
