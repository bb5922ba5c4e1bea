#include "machlab/incomp_euler.hpp"

#include <algorithm>
#include <cmath>

#include "machlab/fft.hpp"

namespace machlab {

namespace {

bool dealias_keep(const TorusGrid& g, std::size_t flat) {
  const auto m = mode_numbers(g, flat);
  return std::abs(m[0]) <= g.cells[0] / 3 && std::abs(m[1]) <= g.cells[1] / 3;
}

void dealias(const TorusGrid& g, ScalarSpectrum& s) {
  for (std::size_t k = 0; k < s.c.size(); ++k)
    if (!dealias_keep(g, k)) s.c[k] = 0.0;
}

// velocity spectrum from vorticity spectrum: v = perp-grad of the
// streamfunction, psi_hat = -omega_hat / |k|^2
void velocity_spectra(const TorusGrid& g, const ScalarSpectrum& w,
                      ScalarSpectrum& vx, ScalarSpectrum& vy) {
  vx = ScalarSpectrum(g);
  vy = ScalarSpectrum(g);
  for (std::size_t k = 0; k < w.c.size(); ++k) {
    const auto kv = wavevector(g, k);
    const double k2 = kv[0] * kv[0] + kv[1] * kv[1];
    if (k2 == 0.0) continue;
    // v = (i ky, -i kx) * omega_hat / |k|^2
    vx.c[k] = std::complex<double>(0.0, kv[1]) * w.c[k] / k2;
    vy.c[k] = std::complex<double>(0.0, -kv[0]) * w.c[k] / k2;
  }
}

// spectral tendency -T[v . grad omega] with 2/3 dealiasing
ScalarSpectrum vorticity_rhs(const TorusGrid& g, const ScalarSpectrum& w_in) {
  ScalarSpectrum w(w_in);
  dealias(g, w);
  ScalarSpectrum vx_s, vy_s, wx_s(g), wy_s(g);
  velocity_spectra(g, w, vx_s, vy_s);
  for (std::size_t k = 0; k < w.c.size(); ++k) {
    const auto kv = wavevector(g, k);
    wx_s.c[k] = std::complex<double>(0.0, kv[0]) * w.c[k];
    wy_s.c[k] = std::complex<double>(0.0, kv[1]) * w.c[k];
  }
  const Field vx = dft_inverse(vx_s);
  const Field vy = dft_inverse(vy_s);
  const Field wx = dft_inverse(wx_s);
  const Field wy = dft_inverse(wy_s);
  Field adv(g.cell_count());
  for (std::size_t c = 0; c < adv.size(); ++c) adv[c] = -(vx[c] * wx[c] + vy[c] * wy[c]);
  ScalarSpectrum rhs = dft_forward(g, adv);
  dealias(g, rhs);
  return rhs;
}

void check_mean_free(const TorusGrid& grid, const Field& omega) {
  double scale = 0.0;
  for (double v : omega) scale = std::max(scale, std::abs(v));
  const double mean = field_mean(grid, omega);
  if (std::abs(mean) > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("vorticity must have zero mean on the torus");
}

}  // namespace

VectorField velocity_from_vorticity(const TorusGrid& grid, const Field& omega) {
  check_mean_free(grid, omega);
  ScalarSpectrum w = dft_forward(grid, omega);
  ScalarSpectrum vx, vy;
  velocity_spectra(grid, w, vx, vy);
  VectorField v(grid);
  v[0] = dft_inverse(vx);
  v[1] = dft_inverse(vy);
  return v;
}

Field streamfunction_from_vorticity(const TorusGrid& grid, const Field& omega) {
  check_mean_free(grid, omega);
  ScalarSpectrum w = dft_forward(grid, omega);
  for (std::size_t k = 0; k < w.c.size(); ++k) {
    const auto kv = wavevector(grid, k);
    const double k2 = kv[0] * kv[0] + kv[1] * kv[1];
    w.c[k] = k2 == 0.0 ? 0.0 : -w.c[k] / k2;
  }
  return dft_inverse(w);
}

VectorField advection_term(const TorusGrid& grid, const VectorField& v) {
  std::array<ScalarSpectrum, 2> vs{dft_forward(grid, v[0]), dft_forward(grid, v[1])};
  for (int d = 0; d < 2; ++d) dealias(grid, vs[d]);
  std::array<Field, 2> vphys{dft_inverse(vs[0]), dft_inverse(vs[1])};
  VectorField out(grid);
  for (int i = 0; i < 2; ++i) {
    std::array<Field, 2> di;
    for (int j = 0; j < 2; ++j) {
      ScalarSpectrum dij(grid);
      for (std::size_t k = 0; k < vs[i].c.size(); ++k) {
        const auto kv = wavevector(grid, k);
        dij.c[k] = std::complex<double>(0.0, kv[j]) * vs[i].c[k];
      }
      di[j] = dft_inverse(dij);
    }
    Field prod(grid.cell_count());
    for (std::size_t c = 0; c < prod.size(); ++c)
      prod[c] = vphys[0][c] * di[0][c] + vphys[1][c] * di[1][c];
    ScalarSpectrum ps = dft_forward(grid, prod);
    dealias(grid, ps);
    out[i] = dft_inverse(ps);
  }
  return out;
}

Field pressure_from_velocity(const TorusGrid& grid, const VectorField& v) {
  std::array<ScalarSpectrum, 2> vs{dft_forward(grid, v[0]), dft_forward(grid, v[1])};
  for (int d = 0; d < 2; ++d) dealias(grid, vs[d]);
  std::array<Field, 2> vphys{dft_inverse(vs[0]), dft_inverse(vs[1])};

  ScalarSpectrum acc(grid);
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      Field prod(grid.cell_count());
      for (std::size_t c = 0; c < prod.size(); ++c) prod[c] = vphys[i][c] * vphys[j][c];
      ScalarSpectrum ps = dft_forward(grid, prod);
      dealias(grid, ps);
      const double mult = (i == j) ? 1.0 : 2.0;
      for (std::size_t k = 0; k < ps.c.size(); ++k) {
        const auto kv = wavevector(grid, k);
        acc.c[k] += -mult * kv[i] * kv[j] * ps.c[k];  // divdiv(v x v)
      }
    }
  }
  // lap Pi = -divdiv(v x v)  =>  Pi_hat = acc / |k|^2, zero mean
  for (std::size_t k = 0; k < acc.c.size(); ++k) {
    const auto kv = wavevector(grid, k);
    const double k2 = kv[0] * kv[0] + kv[1] * kv[1];
    acc.c[k] = k2 == 0.0 ? 0.0 : acc.c[k] / k2;
  }
  return dft_inverse(acc);
}

Field pressure_recover(const IncompressibleState& state) {
  return pressure_from_velocity(state.grid, velocity_from_vorticity(state.grid, state.omega));
}

IncompressibleState incomp_step(const IncompressibleState& state, double dt) {
  const TorusGrid& g = state.grid;
  ScalarSpectrum w = dft_forward(g, state.omega);
  dealias(g, w);

  auto axpy = [&](const ScalarSpectrum& base, double a, const ScalarSpectrum& k) {
    ScalarSpectrum out(base);
    for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += a * k.c[i];
    return out;
  };

  const ScalarSpectrum k1 = vorticity_rhs(g, w);
  const ScalarSpectrum k2 = vorticity_rhs(g, axpy(w, 0.5 * dt, k1));
  const ScalarSpectrum k3 = vorticity_rhs(g, axpy(w, 0.5 * dt, k2));
  const ScalarSpectrum k4 = vorticity_rhs(g, axpy(w, dt, k3));
  for (std::size_t i = 0; i < w.c.size(); ++i)
    w.c[i] += dt / 6.0 * (k1.c[i] + 2.0 * k2.c[i] + 2.0 * k3.c[i] + k4.c[i]);

  IncompressibleState next(g, dft_inverse(w));
  next.time = state.time + dt;
  return next;
}

double incomp_max_dt(const IncompressibleState& state, double cfl) {
  const VectorField v = velocity_from_vorticity(state.grid, state.omega);
  double vmax = 1e-300;
  for (int d = 0; d < 2; ++d)
    for (double x : v[d]) vmax = std::max(vmax, std::abs(x));
  return cfl * std::min(state.grid.dx(0), state.grid.dx(1)) / vmax;
}

std::vector<IncompressibleState> incomp_run(const IncompressibleState& init, double T,
                                            const std::vector<double>& output_times,
                                            const IncompRunOptions& opts) {
  if (!(T >= 0.0)) throw std::invalid_argument("incomp_run: final time must be nonnegative");
  std::vector<double> times(output_times);
  std::sort(times.begin(), times.end());

  std::vector<IncompressibleState> out;
  IncompressibleState state(init);
  const double t_eps = 1e-12 * std::max(1.0, T);
  std::size_t next_out = 0;
  auto emit_due = [&]() {
    while (next_out < times.size() && times[next_out] <= state.time + t_eps) {
      out.push_back(state);
      ++next_out;
    }
  };
  if (times.empty()) out.push_back(state);
  emit_due();

  while (state.time < T - t_eps) {
    double dt = std::min(incomp_max_dt(state, opts.cfl), opts.dt_cap);
    double target = T;
    if (next_out < times.size()) target = std::min(target, times[next_out]);
    if (state.time + dt > target) dt = target - state.time;
    state = incomp_step(state, dt);
    emit_due();
  }
  return out;
}

double kinetic_energy(const TorusGrid& grid, const VectorField& v) {
  long double acc = 0.0;
  for (int d = 0; d < grid.dim; ++d)
    for (double x : v[d]) acc += x * x;
  return 0.5 * static_cast<double>(acc) * grid.cell_volume();
}

double enstrophy(const TorusGrid& grid, const Field& omega) {
  long double acc = 0.0;
  for (double x : omega) acc += x * x;
  return 0.5 * static_cast<double>(acc) * grid.cell_volume();
}

}  // namespace machlab
