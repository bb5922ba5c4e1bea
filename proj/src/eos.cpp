#include "machlab/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace machlab {

double pressure(const EosModel& eos, double rho) {
  if (rho < 0.0) throw std::domain_error("pressure: negative density");
  return eos.a * std::pow(rho, eos.gamma);
}

double pressure_derivative(const EosModel& eos, double rho) {
  if (rho < 0.0) throw std::domain_error("pressure_derivative: negative density");
  return eos.a * eos.gamma * std::pow(rho, eos.gamma - 1.0);
}

double pressure_potential(const EosModel& eos, double rho) {
  if (rho < 0.0) throw std::domain_error("pressure_potential: negative density");
  return eos.a * (std::pow(rho, eos.gamma) - rho) / (eos.gamma - 1.0);
}

double pressure_potential_derivative(const EosModel& eos, double rho) {
  if (rho < 0.0) throw std::domain_error("pressure_potential_derivative: negative density");
  return eos.a * (eos.gamma * std::pow(rho, eos.gamma - 1.0) - 1.0) / (eos.gamma - 1.0);
}

double pressure_potential_second(const EosModel& eos, double rho) {
  if (!(rho > 0.0)) throw std::domain_error("pressure_potential_second: density must be positive");
  return pressure_derivative(eos, rho) / rho;
}

double rel_potential(const EosModel& eos, double rho, double r) {
  if (!(r > 0.0)) throw std::domain_error("rel_potential: reference density must be positive");
  if (rho < 0.0) throw std::domain_error("rel_potential: negative density");
  return pressure_potential(eos, rho) -
         pressure_potential_derivative(eos, r) * (rho - r) -
         pressure_potential(eos, r);
}

std::pair<double, double> growth_constants(const EosModel& eos, double rho_max) {
  if (!(rho_max > 2.0 * eos.rho_bar))
    throw std::domain_error("growth_constants: rho_max must exceed 2 rho_bar");
  const int n = 4096;
  const double lo = std::log(2.0 * eos.rho_bar);
  const double hi = std::log(rho_max);
  // limsup/liminf estimated over the top decade of the sampling range
  const double tail = std::max(lo, hi - std::log(10.0));
  double sup_p_over_P = 0.0;
  double inf_p_over_rho_gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double rho = std::exp(lo + (hi - lo) * i / n);
    if (std::log(rho) < tail) continue;
    const double p = pressure(eos, rho);
    const double P = pressure_potential(eos, rho);
    if (P > 0.0) sup_p_over_P = std::max(sup_p_over_P, p / P);
    inf_p_over_rho_gamma = std::min(inf_p_over_rho_gamma, p / std::pow(rho, eos.gamma));
  }
  return {sup_p_over_P, inf_p_over_rho_gamma};
}

namespace {
// quintic smoothstep, C^2 at both ends
double smoothstep5(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}
}  // namespace

CutoffChi::CutoffChi(double rho_bar_, double support_lo_, double support_hi_)
    : rho_bar(rho_bar_),
      inner_lo(0.5 * rho_bar_),
      inner_hi(2.0 * rho_bar_),
      support_lo(support_lo_),
      support_hi(support_hi_) {
  if (!(support_lo > 0.0 && support_lo < inner_lo && support_hi > inner_hi))
    throw std::domain_error("CutoffChi: support must strictly contain [rho_bar/2, 2 rho_bar]");
}

double CutoffChi::operator()(double rho) const {
  if (rho <= support_lo || rho >= support_hi) return 0.0;
  if (rho >= inner_lo && rho <= inner_hi) return 1.0;
  if (rho < inner_lo) return smoothstep5((rho - support_lo) / (inner_lo - support_lo));
  return smoothstep5((support_hi - rho) / (support_hi - inner_hi));
}

std::pair<double, double> ess_res_split(const CutoffChi& chi, double rho, double value) {
  if (rho < 0.0) throw std::domain_error("ess_res_split: negative density");
  const double c = chi(rho);
  return {c * value, (1.0 - c) * value};
}

std::pair<double, double> convexity_constants(const EosModel& eos, double delta,
                                              double residual_cap_factor) {
  const double rb = eos.rho_bar;
  if (!(delta > 0.0 && 2.0 * delta < rb && rb < 1.0 / (2.0 * delta)))
    throw std::domain_error("convexity_constants: need 0 < 2 delta < rho_bar < 1/(2 delta)");

  // essential range [delta, 1/delta]: ratio |rho-rb|^2 / H(rho|rb),
  // extended by its limit 2/P''(rb) at rho = rb
  const int n_ess = 20000;
  double c_ess = 2.0 / pressure_potential_second(eos, rb);
  for (int i = 0; i <= n_ess; ++i) {
    const double rho = delta + (1.0 / delta - delta) * i / n_ess;
    const double h = rel_potential(eos, rho, rb);
    const double d2 = (rho - rb) * (rho - rb);
    if (h > 1e-300 && d2 / h > c_ess) c_ess = d2 / h;
  }

  // residual range [0, delta) and [1/delta, cap]
  const int n_res = 20000;
  double c_res = 0.0;
  for (int i = 0; i < n_res; ++i) {
    const double rho = delta * i / n_res;
    const double h = rel_potential(eos, rho, rb);
    const double num = 1.0 + std::abs(rho - rb) + pressure_potential(eos, rho);
    if (h > 0.0) c_res = std::max(c_res, num / h);
  }
  const double cap = residual_cap_factor * rb;
  const double lo = std::log(1.0 / delta);
  const double hi = std::log(cap);
  for (int i = 0; i <= n_res; ++i) {
    const double rho = std::exp(lo + (hi - lo) * i / n_res);
    const double h = rel_potential(eos, rho, rb);
    const double num = 1.0 + std::abs(rho - rb) + pressure_potential(eos, rho);
    if (h > 0.0) c_res = std::max(c_res, num / h);
  }
  return {c_ess, c_res};
}

}  // namespace machlab
