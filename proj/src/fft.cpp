#include "machlab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace machlab {

namespace {

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are cached per (nx, ny, direction) and created with
// FFTW_UNALIGNED so they run on arbitrary caller buffers.
struct PlanCache {
  std::mutex mutex;
  std::map<std::array<int, 3>, fftw_plan> plans;

  fftw_plan get(int nx, int ny, bool forward) {
    std::lock_guard<std::mutex> lock(mutex);
    std::array<int, 3> key{nx, ny, forward ? 1 : 0};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    std::vector<double> real(static_cast<std::size_t>(nx) * (ny > 0 ? ny : 1));
    std::vector<fftw_complex> cplx(static_cast<std::size_t>(nx) *
                                   (ny > 0 ? ny / 2 + 1 : 1));
    fftw_plan p = nullptr;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (ny == 0) {  // 1D
      if (forward)
        p = fftw_plan_dft_r2c_1d(nx, real.data(), cplx.data(), flags);
      else
        p = fftw_plan_dft_c2r_1d(nx, cplx.data(), real.data(), flags);
    } else {
      if (forward)
        p = fftw_plan_dft_r2c_2d(nx, ny, real.data(), cplx.data(), flags);
      else
        p = fftw_plan_dft_c2r_2d(nx, ny, cplx.data(), real.data(), flags);
    }
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

ScalarSpectrum::ScalarSpectrum(const TorusGrid& g) : grid(g), c(spectrum_size(g)) {}

std::size_t spectrum_size(const TorusGrid& grid) {
  if (grid.dim == 1) return static_cast<std::size_t>(grid.cells[0] / 2 + 1);
  return static_cast<std::size_t>(grid.cells[0]) * (grid.cells[1] / 2 + 1);
}

ScalarSpectrum dft_forward(const TorusGrid& grid, const Field& field) {
  if (field.size() != grid.cell_count())
    throw std::invalid_argument("dft_forward: field shape does not match grid");
  ScalarSpectrum out(grid);
  std::vector<double> in(field);  // r2c may scribble on its input
  fftw_plan p = plan_cache().get(grid.cells[0], grid.dim == 1 ? 0 : grid.cells[1], true);
  fftw_execute_dft_r2c(p, in.data(), reinterpret_cast<fftw_complex*>(out.c.data()));
  return out;
}

Field dft_inverse(const ScalarSpectrum& spectrum) {
  const TorusGrid& grid = spectrum.grid;
  if (spectrum.c.size() != spectrum_size(grid))
    throw std::invalid_argument("dft_inverse: spectrum shape does not match grid");
  std::vector<std::complex<double>> scratch(spectrum.c);  // c2r destroys input
  Field out(grid.cell_count());
  fftw_plan p = plan_cache().get(grid.cells[0], grid.dim == 1 ? 0 : grid.cells[1], false);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double norm = 1.0 / static_cast<double>(grid.cell_count());
  for (double& v : out) v *= norm;
  return out;
}

std::array<int, 2> mode_numbers(const TorusGrid& grid, std::size_t flat) {
  if (grid.dim == 1) return {static_cast<int>(flat), 0};
  const int nyh = grid.cells[1] / 2 + 1;
  int i = static_cast<int>(flat) / nyh;
  int j = static_cast<int>(flat) % nyh;
  if (i > grid.cells[0] / 2) i -= grid.cells[0];
  return {i, j};
}

std::array<double, 2> wavevector(const TorusGrid& grid, std::size_t flat) {
  const auto m = mode_numbers(grid, flat);
  std::array<double, 2> k{0.0, 0.0};
  for (int d = 0; d < grid.dim; ++d) k[d] = 2.0 * M_PI * m[d] / grid.lengths[d];
  return k;
}

double hermitian_weight(const TorusGrid& grid, std::size_t flat) {
  const int n_last = grid.dim == 1 ? grid.cells[0] : grid.cells[1];
  const int j = grid.dim == 1 ? static_cast<int>(flat)
                              : static_cast<int>(flat) % (n_last / 2 + 1);
  return (j == 0 || j == n_last / 2) ? 1.0 : 2.0;
}

double spectral_l2_norm(const ScalarSpectrum& spectrum) {
  const TorusGrid& grid = spectrum.grid;
  const double scale = grid.cell_volume() / static_cast<double>(grid.cell_count());
  double sum = 0.0;
  for (std::size_t f = 0; f < spectrum.c.size(); ++f)
    sum += hermitian_weight(grid, f) * std::norm(spectrum.c[f]);
  return std::sqrt(scale * sum);
}

}  // namespace machlab
