#include "machlab/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "machlab/fft.hpp"
#include "machlab/operators.hpp"

namespace machlab {

AcousticState::AcousticState(const TorusGrid& g, Field s_, VectorField grad_phi_, double eps_,
                             const EosModel& eos)
    : grid(g), s(std::move(s_)), grad_phi(std::move(grad_phi_)), eps(eps_),
      rho_bar(eos.rho_bar), c2(pressure_derivative(eos, eos.rho_bar)) {
  if (!(eps_ > 0.0)) throw std::invalid_argument("AcousticState: eps must be positive");
  if (s.size() != g.cell_count())
    throw std::invalid_argument("AcousticState: s shape mismatch");
  for (int d = 0; d < g.dim; ++d)
    if (grad_phi[d].size() != g.cell_count())
      throw std::invalid_argument("AcousticState: grad_phi shape mismatch");
}

AcousticState acoustic_step_exact(const AcousticState& state, double dt) {
  const TorusGrid& g = state.grid;
  ScalarSpectrum s_hat = dft_forward(g, state.s);
  VectorSpectrum g_hat(g);
  for (int d = 0; d < g.dim; ++d) g_hat[d] = dft_forward(g, state.grad_phi[d]);

  const double alpha_base = state.rho_bar / state.eps;       // times |k|^2
  const double beta = state.c2 / (state.eps * state.rho_bar);

  for (std::size_t k = 0; k < s_hat.c.size(); ++k) {
    const auto kv = wavevector(g, k);
    const double k2 = kv[0] * kv[0] + kv[1] * kv[1];
    if (k2 == 0.0) continue;  // mean of s and constant part of grad_phi are invariant

    // longitudinal potential: grad_phi = i k phi  =>  phi = -i k . g / |k|^2
    std::complex<double> phi(0.0, 0.0);
    for (int d = 0; d < g.dim; ++d)
      phi += std::complex<double>(0.0, -kv[d]) * g_hat[d].c[k];
    phi /= k2;

    const double alpha = alpha_base * k2;
    const double omega = std::sqrt(alpha * beta);
    const double th = omega * dt;
    const double c = std::cos(th), sn = std::sin(th);
    const std::complex<double> s_new = c * s_hat.c[k] + (alpha / omega) * sn * phi;
    const std::complex<double> phi_new = c * phi - (beta / omega) * sn * s_hat.c[k];
    s_hat.c[k] = s_new;
    for (int d = 0; d < g.dim; ++d)
      g_hat[d].c[k] = std::complex<double>(0.0, kv[d]) * phi_new;
  }

  AcousticState next(state);
  next.s = dft_inverse(s_hat);
  for (int d = 0; d < g.dim; ++d) next.grad_phi[d] = dft_inverse(g_hat[d]);
  next.time = state.time + dt;
  return next;
}

double acoustic_energy(const AcousticState& state) {
  const TorusGrid& g = state.grid;
  long double acc = 0.0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    double g2 = state.grad_phi[0][c] * state.grad_phi[0][c];
    if (g.dim == 2) g2 += state.grad_phi[1][c] * state.grad_phi[1][c];
    acc += state.c2 * state.s[c] * state.s[c] + state.rho_bar * state.rho_bar * g2;
  }
  return static_cast<double>(acc) * g.cell_volume();
}

double sobolev_energy(const AcousticState& state, int k_order) {
  if (k_order < 0) throw std::domain_error("sobolev_energy: order must be nonnegative");
  const TorusGrid& g = state.grid;
  const ScalarSpectrum s_hat = dft_forward(g, state.s);
  VectorSpectrum g_hat(g);
  for (int d = 0; d < g.dim; ++d) g_hat[d] = dft_forward(g, state.grad_phi[d]);

  const double scale = g.cell_volume() / static_cast<double>(g.cell_count());
  long double acc = 0.0;
  for (std::size_t k = 0; k < s_hat.c.size(); ++k) {
    const auto kv = wavevector(g, k);
    const double k2 = kv[0] * kv[0] + kv[1] * kv[1];
    const double w = hermitian_weight(g, k) * std::pow(1.0 + k2, k_order);
    double g2 = std::norm(g_hat[0].c[k]);
    if (g.dim == 2) g2 += std::norm(g_hat[1].c[k]);
    acc += w * (state.c2 * std::norm(s_hat.c[k]) + state.rho_bar * state.rho_bar * g2);
  }
  return static_cast<double>(acc) * scale;
}

DecayResult decay_experiment(const AcousticState& init, const SubBox& subset,
                             const std::vector<double>& sample_times) {
  const TorusGrid& g = init.grid;
  const double lmin = g.dim == 1 ? g.lengths[0] : std::min(g.lengths[0], g.lengths[1]);
  const double window =
      (0.5 * lmin - 0.5 * subset.diameter(g.dim)) * init.eps / std::sqrt(init.c2);
  for (double t : sample_times)
    if (!(t < window))
      throw std::invalid_argument(
          "decay_experiment: sample time outside the wrap-free window; maximal admissible "
          "time is " + std::to_string(window));

  DecayResult result;
  result.window_max_time = window;
  for (double t : sample_times) {
    const AcousticState at = acoustic_step_exact(init, t);  // exact, single hop from t=0
    DecaySample sample;
    sample.time = t;
    sample.tau_over_eps = t / init.eps;
    const double sup_s = lp_norm(g, at.s, std::numeric_limits<double>::infinity(), subset);
    double sup_g = lp_norm(g, at.grad_phi[0], std::numeric_limits<double>::infinity(), subset);
    if (g.dim == 2) {
      Field mag(g.cell_count());
      for (std::size_t c = 0; c < mag.size(); ++c)
        mag[c] = std::hypot(at.grad_phi[0][c], at.grad_phi[1][c]);
      sup_g = lp_norm(g, mag, std::numeric_limits<double>::infinity(), subset);
    }
    sample.sup_s_sq = sup_s * sup_s;
    sample.sup_grad_phi_sq = sup_g * sup_g;
    result.samples.push_back(sample);
  }

  // least-squares slope of log(sup_s^2 + sup_g^2) against log(1 + t/eps)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(result.samples.size());
  for (const auto& smp : result.samples) {
    const double x = std::log(1.0 + smp.tau_over_eps);
    const double y = std::log(smp.sup_s_sq + smp.sup_grad_phi_sq);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  result.fitted_slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
  return result;
}

}  // namespace machlab
