#include "machlab/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "machlab/fft.hpp"
#include "machlab/incomp_euler.hpp"
#include "machlab/operators.hpp"

namespace machlab {

VelocitySpec VelocitySpec::taylor_green(double amplitude) {
  VelocitySpec s;
  s.kind = Kind::TaylorGreen;
  s.amplitude = amplitude;
  return s;
}

VelocitySpec VelocitySpec::vortex_pair(double amplitude, double width, double separation) {
  VelocitySpec s;
  s.kind = Kind::VortexPair;
  s.amplitude = amplitude;
  s.width = width;
  s.separation = separation;
  return s;
}

VelocitySpec VelocitySpec::band_limited_random(double amplitude, int k_min, int k_max,
                                               std::uint64_t seed) {
  VelocitySpec s;
  s.kind = Kind::BandLimitedRandom;
  s.amplitude = amplitude;
  s.k_min = k_min;
  s.k_max = k_max;
  s.seed = seed;
  return s;
}

VelocitySpec VelocitySpec::parse(const std::string& name) {
  if (name == "zero") return zero();
  if (name == "taylor-green") return taylor_green();
  if (name == "vortex-pair") return vortex_pair();
  if (name == "band-limited-random") return band_limited_random(1.0, 1, 4, 1);
  throw std::invalid_argument("unknown velocity field '" + name + "'");
}

Field gaussian_field(const TorusGrid& grid, const GaussianSpec& spec) {
  Field out(grid.cell_count(), 0.0);
  const int nx = grid.cells[0];
  const int ny = grid.dim == 2 ? grid.cells[1] : 1;
  const double s2 = 2.0 * spec.width * spec.width;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      double r2 = 0.0;
      for (int d = 0; d < grid.dim; ++d) {
        double dx = (d == 0 ? grid.center(0, i) : grid.center(1, j)) - spec.center[d];
        // nearest periodic image
        dx -= grid.lengths[d] * std::round(dx / grid.lengths[d]);
        r2 += dx * dx;
      }
      out[grid.index(i, j)] = spec.amplitude * std::exp(-r2 / s2);
    }
  }
  return out;
}

namespace {

Field taylor_green_vorticity(const TorusGrid& grid, double amplitude) {
  Field w(grid.cell_count());
  const double kx = 2.0 * M_PI / grid.lengths[0];
  const double ky = 2.0 * M_PI / grid.lengths[1];
  for (int i = 0; i < grid.cells[0]; ++i)
    for (int j = 0; j < grid.cells[1]; ++j)
      w[grid.index(i, j)] = amplitude * (kx + ky) *
                            std::sin(kx * grid.center(0, i)) * std::sin(ky * grid.center(1, j));
  return w;
}

Field vortex_pair_vorticity(const TorusGrid& grid, const VelocitySpec& spec) {
  GaussianSpec plus{spec.amplitude, spec.width, {0.0, 0.5 * spec.separation}};
  GaussianSpec minus{-spec.amplitude, spec.width, {0.0, -0.5 * spec.separation}};
  Field w = gaussian_field(grid, plus);
  const Field w2 = gaussian_field(grid, minus);
  for (std::size_t c = 0; c < w.size(); ++c) w[c] += w2[c];
  const double mean = field_mean(grid, w);
  for (double& v : w) v -= mean;
  return w;
}

// deterministic Box-Muller normals from a seeded engine
Field random_band_vorticity(const TorusGrid& grid, const VelocitySpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  auto normal = [&]() {
    const double u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  ScalarSpectrum psi(grid);
  const int nyh = grid.cells[1] / 2 + 1;
  for (int i = 0; i < grid.cells[0]; ++i) {
    for (int j = 0; j < nyh; ++j) {
      const std::size_t flat = static_cast<std::size_t>(i) * nyh + j;
      const auto m = mode_numbers(grid, flat);
      const double kmag = std::hypot(static_cast<double>(m[0]), static_cast<double>(m[1]));
      if (kmag < spec.k_min || kmag > spec.k_max) continue;
      psi.c[flat] = std::complex<double>(normal(), normal());
    }
  }
  // enforce a real streamfunction: drop the imaginary part after inversion
  Field psi_phys = dft_inverse(psi);
  ScalarSpectrum clean = dft_forward(grid, psi_phys);
  for (std::size_t k = 0; k < clean.c.size(); ++k) {
    const auto kv = wavevector(grid, k);
    clean.c[k] *= -(kv[0] * kv[0] + kv[1] * kv[1]);  // omega = lap psi
  }
  Field w = dft_inverse(clean);
  double wmax = 0.0;
  for (double v : w) wmax = std::max(wmax, std::abs(v));
  if (wmax > 0.0)
    for (double& v : w) v *= spec.amplitude / wmax;
  return w;
}

}  // namespace

Field make_vorticity(const TorusGrid& grid, const VelocitySpec& spec) {
  if (grid.dim != 2) throw std::invalid_argument("make_vorticity: grid must be 2D");
  switch (spec.kind) {
    case VelocitySpec::Kind::Zero:
      return Field(grid.cell_count(), 0.0);
    case VelocitySpec::Kind::TaylorGreen:
      return taylor_green_vorticity(grid, spec.amplitude);
    case VelocitySpec::Kind::VortexPair:
      return vortex_pair_vorticity(grid, spec);
    case VelocitySpec::Kind::BandLimitedRandom:
      return random_band_vorticity(grid, spec);
  }
  throw std::logic_error("make_vorticity: unreachable");
}

VectorField make_velocity(const TorusGrid& grid, const VelocitySpec& spec) {
  if (grid.dim == 1) {
    if (spec.kind != VelocitySpec::Kind::Zero)
      throw std::invalid_argument("make_velocity: only the zero field is solenoidal in 1D");
    return VectorField(grid);
  }
  if (spec.kind == VelocitySpec::Kind::TaylorGreen) {
    VectorField v(grid);
    const double kx = 2.0 * M_PI / grid.lengths[0];
    const double ky = 2.0 * M_PI / grid.lengths[1];
    for (int i = 0; i < grid.cells[0]; ++i)
      for (int j = 0; j < grid.cells[1]; ++j) {
        const std::size_t c = grid.index(i, j);
        const double x = grid.center(0, i), y = grid.center(1, j);
        v[0][c] = spec.amplitude * std::sin(kx * x) * std::cos(ky * y);
        v[1][c] = -spec.amplitude * std::cos(kx * x) * std::sin(ky * y);
      }
    return v;
  }
  return velocity_from_vorticity(grid, make_vorticity(grid, spec));
}

ConservedState wellprepared_init(const TorusGrid& grid, const EosModel& eos,
                                 const VelocitySpec& v0, double eps) {
  const VectorField v = make_velocity(grid, v0);
  if (grid.dim == 2 && solenoidal_residual(grid, v) > 1e-10)
    throw std::invalid_argument("wellprepared_init: velocity field is not solenoidal");
  ConservedState state(grid, eps);
  std::fill(state.rho.begin(), state.rho.end(), eos.rho_bar);
  for (int d = 0; d < grid.dim; ++d)
    for (std::size_t c = 0; c < grid.cell_count(); ++c)
      state.mom[d][c] = eos.rho_bar * v[d][c];
  return state;
}

std::pair<ConservedState, AcousticState> illprepared_init(const TorusGrid& grid,
                                                          const EosModel& eos,
                                                          const VelocitySpec& v0,
                                                          const GaussianSpec& s0,
                                                          const GaussianSpec& phi0,
                                                          double eps) {
  const VectorField v = make_velocity(grid, v0);
  const Field s_field = gaussian_field(grid, s0);
  const Field phi_field = gaussian_field(grid, phi0);
  const VectorField grad_phi = grad_spectral(grid, phi_field);

  ConservedState state(grid, eps);
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    state.rho[c] = eos.rho_bar + eps * s_field[c];
    if (!(state.rho[c] > 0.0))
      throw std::invalid_argument(
          "illprepared_init: density fluctuation amplitude drives rho nonpositive");
  }
  for (int d = 0; d < grid.dim; ++d)
    for (std::size_t c = 0; c < grid.cell_count(); ++c)
      state.mom[d][c] = state.rho[c] * (v[d][c] + grad_phi[d][c]);

  AcousticState acoustic(grid, s_field, grad_phi, eps, eos);
  return {std::move(state), std::move(acoustic)};
}

ConservedState smooth_bump_init(const TorusGrid& grid, const EosModel& eos,
                                const GaussianSpec& rho_bump, const GaussianSpec& velocity_bump,
                                double eps) {
  const Field drho = gaussian_field(grid, rho_bump);
  const Field u = gaussian_field(grid, velocity_bump);
  ConservedState state(grid, eps);
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    state.rho[c] = eos.rho_bar + drho[c];
    if (!(state.rho[c] > 0.0))
      throw std::invalid_argument("smooth_bump_init: bump drives density nonpositive");
    state.mom[0][c] = state.rho[c] * u[c];
  }
  return state;
}

}  // namespace machlab
