#pragma once

#include <stdexcept>
#include <utility>

namespace machlab {

/// Barotropic (isentropic) pressure law p(rho) = a * rho^gamma together with
/// the reference density rho_bar used by all relative-energy diagnostics.
struct EosModel {
  double a = 1.0;        // pressure coefficient, > 0
  double gamma = 2.0;    // adiabatic exponent, > 1
  double rho_bar = 1.0;  // reference / far-field density, > 0

  void validate() const {
    if (!(a > 0.0)) throw std::domain_error("EosModel: a must be positive");
    if (!(gamma > 1.0)) throw std::domain_error("EosModel: gamma must exceed 1");
    if (!(rho_bar > 0.0)) throw std::domain_error("EosModel: rho_bar must be positive");
  }
};

/// p(rho) = a rho^gamma.
double pressure(const EosModel& eos, double rho);

/// dp/drho = a gamma rho^(gamma-1).
double pressure_derivative(const EosModel& eos, double rho);

/// Pressure potential P(rho) = rho * int_1^rho p(z)/z^2 dz.
/// For the isentropic law the closed form is a (rho^gamma - rho) / (gamma - 1),
/// extended continuously by P(0) = 0. P'' = p'/rho > 0 on (0, inf).
double pressure_potential(const EosModel& eos, double rho);

/// P'(rho) = a (gamma rho^(gamma-1) - 1) / (gamma - 1).
double pressure_potential_derivative(const EosModel& eos, double rho);

/// P''(rho) = p'(rho)/rho.
double pressure_potential_second(const EosModel& eos, double rho);

/// Relative potential H(rho | r) = P(rho) - P'(r)(rho - r) - P(r).
/// Bregman divergence of P: nonnegative, zero iff rho == r.
/// Vacuum convention H(0 | r) = P'(r) r - P(r).
double rel_potential(const EosModel& eos, double rho, double r);

/// Numerically sampled growth constants of the pressure law:
/// first the sup of p/P over the last decade of a logarithmic grid reaching
/// rho_max (an estimate of limsup p/P, which equals gamma - 1 for the
/// isentropic law), second the inf of p/rho^gamma over the same tail
/// (identically a for the isentropic law). Requires rho_max > 2 rho_bar.
std::pair<double, double> growth_constants(const EosModel& eos, double rho_max);

/// Smooth cutoff used for the essential/residual decomposition: chi == 1 on
/// [rho_bar/2, 2 rho_bar], chi == 0 outside (support_lo, support_hi), with a
/// quintic smoothstep transition (C^2) on each side.
struct CutoffChi {
  double rho_bar = 1.0;
  double inner_lo = 0.5;    // chi == 1 on [inner_lo, inner_hi]
  double inner_hi = 2.0;
  double support_lo = 0.25; // chi == 0 outside (support_lo, support_hi)
  double support_hi = 4.0;
  int smoothness = 2;       // continuity order of the transition polynomial

  explicit CutoffChi(double rho_bar_ = 1.0)
      : rho_bar(rho_bar_),
        inner_lo(0.5 * rho_bar_),
        inner_hi(2.0 * rho_bar_),
        support_lo(0.25 * rho_bar_),
        support_hi(4.0 * rho_bar_) {}

  CutoffChi(double rho_bar_, double support_lo_, double support_hi_);

  double operator()(double rho) const;
};

/// Splits `value` into (chi(rho) * value, (1 - chi(rho)) * value).
/// The parts sum to `value` exactly up to one ulp.
std::pair<double, double> ess_res_split(const CutoffChi& chi, double rho, double value);

/// Empirical constants for the convexity bounds of the relative potential:
/// c_ess is the smallest constant with |rho - rho_bar|^2 <= c_ess H(rho|rho_bar)
/// on [delta, 1/delta], c_res the smallest with
/// 1 + |rho - rho_bar| + P(rho) <= c_res H(rho|rho_bar) on
/// [0, delta) u [1/delta, cap], both obtained by maximizing the ratio on a
/// fine grid (the residual side on a logarithmic grid up to cap).
/// Requires 0 < 2 delta < rho_bar < 1/(2 delta).
std::pair<double, double> convexity_constants(const EosModel& eos, double delta,
                                              double residual_cap_factor = 1.0e6);

}  // namespace machlab
