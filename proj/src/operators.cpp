#include "machlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace machlab {

namespace {

bool is_nyquist(const TorusGrid& grid, std::size_t flat, int d) {
  const auto m = mode_numbers(grid, flat);
  return std::abs(m[d]) == grid.cells[d] / 2;
}

}  // namespace

VectorField grad_spectral(const TorusGrid& grid, const Field& f) {
  const ScalarSpectrum spec = dft_forward(grid, f);
  VectorField out(grid);
  for (int d = 0; d < grid.dim; ++d) {
    ScalarSpectrum ds(grid);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      if (is_nyquist(grid, k, d)) continue;
      const auto kv = wavevector(grid, k);
      ds.c[k] = std::complex<double>(0.0, kv[d]) * spec.c[k];
    }
    out[d] = dft_inverse(ds);
  }
  return out;
}

Field div_spectral(const TorusGrid& grid, const VectorField& u) {
  ScalarSpectrum acc(grid);
  for (int d = 0; d < grid.dim; ++d) {
    const ScalarSpectrum spec = dft_forward(grid, u[d]);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      if (is_nyquist(grid, k, d)) continue;
      const auto kv = wavevector(grid, k);
      acc.c[k] += std::complex<double>(0.0, kv[d]) * spec.c[k];
    }
  }
  return dft_inverse(acc);
}

Field laplacian_spectral(const TorusGrid& grid, const Field& f) {
  ScalarSpectrum spec = dft_forward(grid, f);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const auto kv = wavevector(grid, k);
    spec.c[k] *= -(kv[0] * kv[0] + kv[1] * kv[1]);
  }
  return dft_inverse(spec);
}

VectorField grad_fd(const TorusGrid& grid, const Field& f) {
  VectorField out(grid);
  const int nx = grid.cells[0];
  const int ny = grid.dim == 2 ? grid.cells[1] : 1;
  const double ix = 0.5 / grid.dx(0);
  const double iy = grid.dim == 2 ? 0.5 / grid.dx(1) : 0.0;
  for (int i = 0; i < nx; ++i) {
    const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
    for (int j = 0; j < ny; ++j) {
      const std::size_t c = grid.index(i, j);
      out[0][c] = (f[grid.index(ip, j)] - f[grid.index(im, j)]) * ix;
      if (grid.dim == 2) {
        const int jp = (j + 1) % ny, jm = (j + ny - 1) % ny;
        out[1][c] = (f[grid.index(i, jp)] - f[grid.index(i, jm)]) * iy;
      }
    }
  }
  return out;
}

Field div_fd(const TorusGrid& grid, const VectorField& u) {
  Field out(grid.cell_count(), 0.0);
  const int nx = grid.cells[0];
  const int ny = grid.dim == 2 ? grid.cells[1] : 1;
  const double ix = 0.5 / grid.dx(0);
  const double iy = grid.dim == 2 ? 0.5 / grid.dx(1) : 0.0;
  for (int i = 0; i < nx; ++i) {
    const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
    for (int j = 0; j < ny; ++j) {
      const std::size_t c = grid.index(i, j);
      out[c] = (u[0][grid.index(ip, j)] - u[0][grid.index(im, j)]) * ix;
      if (grid.dim == 2) {
        const int jp = (j + 1) % ny, jm = (j + ny - 1) % ny;
        out[c] += (u[1][grid.index(i, jp)] - u[1][grid.index(i, jm)]) * iy;
      }
    }
  }
  return out;
}

Field laplacian_fd(const TorusGrid& grid, const Field& f) {
  Field out(grid.cell_count(), 0.0);
  const int nx = grid.cells[0];
  const int ny = grid.dim == 2 ? grid.cells[1] : 1;
  const double ax = 1.0 / (grid.dx(0) * grid.dx(0));
  const double ay = grid.dim == 2 ? 1.0 / (grid.dx(1) * grid.dx(1)) : 0.0;
  for (int i = 0; i < nx; ++i) {
    const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
    for (int j = 0; j < ny; ++j) {
      const std::size_t c = grid.index(i, j);
      out[c] = (f[grid.index(ip, j)] - 2.0 * f[c] + f[grid.index(im, j)]) * ax;
      if (grid.dim == 2) {
        const int jp = (j + 1) % ny, jm = (j + ny - 1) % ny;
        out[c] += (f[grid.index(i, jp)] - 2.0 * f[c] + f[grid.index(i, jm)]) * ay;
      }
    }
  }
  return out;
}

VectorField helmholtz_project(const TorusGrid& grid, const VectorField& u) {
  if (grid.dim == 1) {
    VectorField out(grid);
    const double m = field_mean(grid, u[0]);
    std::fill(out[0].begin(), out[0].end(), m);
    return out;
  }
  std::array<ScalarSpectrum, 2> spec{dft_forward(grid, u[0]), dft_forward(grid, u[1])};
  for (std::size_t k = 0; k < spec[0].size(); ++k) {
    const auto kv = wavevector(grid, k);
    const double k2 = kv[0] * kv[0] + kv[1] * kv[1];
    if (k2 == 0.0) continue;
    const std::complex<double> kdotu = kv[0] * spec[0].c[k] + kv[1] * spec[1].c[k];
    spec[0].c[k] -= kv[0] * kdotu / k2;
    spec[1].c[k] -= kv[1] * kdotu / k2;
  }
  VectorField out(grid);
  out[0] = dft_inverse(spec[0]);
  out[1] = dft_inverse(spec[1]);
  return out;
}

double solenoidal_residual(const TorusGrid& grid, const VectorField& u) {
  const Field div = div_spectral(grid, u);
  double max_div = 0.0, max_u = 0.0;
  for (double v : div) max_div = std::max(max_div, std::abs(v));
  for (int d = 0; d < grid.dim; ++d)
    for (double v : u[d]) max_u = std::max(max_u, std::abs(v));
  // scale by a representative gradient magnitude
  const double scale = std::max(1e-300, max_u / std::min(grid.lengths[0], grid.lengths[grid.dim - 1]));
  return max_div / scale;
}

double lp_norm(const TorusGrid& grid, const Field& f, double p,
               const std::optional<SubBox>& subset) {
  if (p < 1.0) throw std::domain_error("lp_norm: p must be at least 1");
  const double vol = grid.cell_volume();
  const int nx = grid.cells[0];
  const int ny = grid.dim == 2 ? grid.cells[1] : 1;
  const bool inf = std::isinf(p);
  double acc = 0.0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (subset) {
        const std::array<double, 2> x{grid.center(0, i),
                                      grid.dim == 2 ? grid.center(1, j) : 0.0};
        if (!subset->contains(grid.dim, x)) continue;
      }
      const double v = std::abs(f[grid.index(i, j)]);
      if (inf)
        acc = std::max(acc, v);
      else
        acc += std::pow(v, p) * vol;
    }
  }
  return inf ? acc : std::pow(acc, 1.0 / p);
}

double field_mean(const TorusGrid& grid, const Field& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s / static_cast<double>(grid.cell_count());
}

}  // namespace machlab
