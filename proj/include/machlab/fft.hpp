#pragma once

#include <complex>
#include <vector>

#include "machlab/grid.hpp"

namespace machlab {

/// Half-complex spectrum of a real field in the FFTW r2c layout:
/// 1D coefficients are indexed by j in [0, n/2], 2D row-major by
/// i * (ny/2 + 1) + j with i in [0, nx) and j in [0, ny/2]. Conjugate
/// symmetry is implicit in the layout, so inverse transforms always
/// produce real fields.
struct ScalarSpectrum {
  TorusGrid grid;
  std::vector<std::complex<double>> c;

  ScalarSpectrum() = default;
  explicit ScalarSpectrum(const TorusGrid& g);

  std::size_t size() const { return c.size(); }
};

struct VectorSpectrum {
  std::array<ScalarSpectrum, 2> comp;

  VectorSpectrum() = default;
  explicit VectorSpectrum(const TorusGrid& g) {
    for (int d = 0; d < g.dim; ++d) comp[d] = ScalarSpectrum(g);
  }
  ScalarSpectrum& operator[](int d) { return comp[d]; }
  const ScalarSpectrum& operator[](int d) const { return comp[d]; }
};

std::size_t spectrum_size(const TorusGrid& grid);

/// Unnormalized forward transform. Throws on shape mismatch.
ScalarSpectrum dft_forward(const TorusGrid& grid, const Field& field);

/// Inverse transform normalized by the cell count, so
/// dft_inverse(dft_forward(f)) == f up to roundoff.
Field dft_inverse(const ScalarSpectrum& spectrum);

/// Signed integer mode numbers of a flat spectral index.
std::array<int, 2> mode_numbers(const TorusGrid& grid, std::size_t flat);

/// Physical wavenumber vector 2*pi*k_d/L_d of a flat spectral index.
std::array<double, 2> wavevector(const TorusGrid& grid, std::size_t flat);

/// Multiplicity of a half-complex coefficient in full-spectrum sums
/// (2 for modes whose conjugate partner is folded away, 1 otherwise).
double hermitian_weight(const TorusGrid& grid, std::size_t flat);

/// Parseval L2 norm computed from the spectrum:
/// ||f||^2 = cell_volume / N * sum_k w_k |f_k|^2.
double spectral_l2_norm(const ScalarSpectrum& spectrum);

}  // namespace machlab
