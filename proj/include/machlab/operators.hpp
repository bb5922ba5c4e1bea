#pragma once

#include <optional>

#include "machlab/fft.hpp"
#include "machlab/grid.hpp"

namespace machlab {

// Spectral operators are exact for band-limited fields. Odd derivatives zero
// the Nyquist mode; the Laplacian keeps it.
VectorField grad_spectral(const TorusGrid& grid, const Field& f);
Field div_spectral(const TorusGrid& grid, const VectorField& u);
Field laplacian_spectral(const TorusGrid& grid, const Field& f);

// Second-order centered variants on the periodic grid.
VectorField grad_fd(const TorusGrid& grid, const Field& f);
Field div_fd(const TorusGrid& grid, const VectorField& u);
Field laplacian_fd(const TorusGrid& grid, const Field& f);

/// L2-orthogonal projection onto divergence-free fields. In 2D this removes
/// the gradient part mode by mode (the mean is untouched); in 1D the only
/// solenoidal fields are constants, so the projection returns the mean.
VectorField helmholtz_project(const TorusGrid& grid, const VectorField& u);

/// Maximum pointwise magnitude of the spectral divergence relative to the
/// field scale; used to verify solenoidality of constructed data.
double solenoidal_residual(const TorusGrid& grid, const VectorField& u);

/// Cell-volume-weighted discrete L^p norm over an optional compact sub-box
/// (whole grid when absent). p may be infinity.
double lp_norm(const TorusGrid& grid, const Field& f, double p,
               const std::optional<SubBox>& subset = std::nullopt);

double field_mean(const TorusGrid& grid, const Field& f);

}  // namespace machlab
