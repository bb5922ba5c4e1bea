#include "machlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "machlab/operators.hpp"

namespace machlab {

EmpiricalMeasure::EmpiricalMeasure(std::vector<ConservedState> members_,
                                   std::vector<double> weights_)
    : members(std::move(members_)), weights(std::move(weights_)) {
  if (members.empty()) throw std::invalid_argument("EmpiricalMeasure: need at least one member");
  if (weights.size() != members.size())
    throw std::invalid_argument("EmpiricalMeasure: one weight per member required");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("EmpiricalMeasure: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-14)
    throw std::invalid_argument("EmpiricalMeasure: weights must sum to 1");
  const TorusGrid& g = members.front().grid;
  for (const auto& m : members) {
    if (!(m.grid == g) || m.eps != members.front().eps ||
        std::abs(m.time - members.front().time) > 1e-12)
      throw std::invalid_argument("EmpiricalMeasure: members must share grid, time and eps");
    m.validate_positive();
  }
}

EmpiricalMeasure EmpiricalMeasure::dirac(ConservedState state) {
  std::vector<ConservedState> m;
  m.push_back(std::move(state));
  return EmpiricalMeasure(std::move(m), {1.0});
}

EmpiricalMeasure EmpiricalMeasure::equal_weights(std::vector<ConservedState> members_) {
  const std::size_t k = members_.size();
  return EmpiricalMeasure(std::move(members_),
                          std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Field expect(const EmpiricalMeasure& measure, const PhaseFunction& g) {
  const TorusGrid& grid = measure.grid();
  Field out(grid.cell_count(), 0.0);
  for (std::size_t k = 0; k < measure.size(); ++k) {
    const ConservedState& s = measure.members[k];
    for (std::size_t c = 0; c < out.size(); ++c) {
      const std::array<double, 2> mom{s.mom[0][c], grid.dim == 2 ? s.mom[1][c] : 0.0};
      const double v = g(s.rho[c], mom);
      if (!std::isfinite(v))
        throw std::runtime_error("expect: non-finite value at member " + std::to_string(k) +
                                 ", cell " + std::to_string(c));
      out[c] += measure.weights[k] * v;
    }
  }
  return out;
}

namespace {

RelEnergyParts relative_energy_impl(const EmpiricalMeasure& measure,
                                    const std::function<double(std::size_t)>& r_at,
                                    const std::function<std::array<double, 2>(std::size_t)>& U_at,
                                    const EosModel& eos, const std::optional<SubBox>& subset) {
  const TorusGrid& grid = measure.grid();
  const double vol = grid.cell_volume();
  const double inv_eps2 = 1.0 / (measure.eps() * measure.eps());
  const CutoffChi chi(eos.rho_bar);

  long double kin = 0.0, ess = 0.0, res = 0.0;
  const int nx = grid.cells[0];
  const int ny = grid.dim == 2 ? grid.cells[1] : 1;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (subset) {
        const std::array<double, 2> x{grid.center(0, i),
                                      grid.dim == 2 ? grid.center(1, j) : 0.0};
        if (!subset->contains(grid.dim, x)) continue;
      }
      const std::size_t c = grid.index(i, j);
      const double r = r_at(c);
      if (!(r > 0.0))
        throw std::domain_error("relative_energy: reference density must be positive");
      const auto U = U_at(c);
      for (std::size_t k = 0; k < measure.size(); ++k) {
        const ConservedState& s = measure.members[k];
        const double w = measure.weights[k];
        const double rho = s.rho[c];
        double du2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
          const double du = s.mom[d][c] / rho - U[d];
          du2 += du * du;
        }
        kin += w * 0.5 * rho * du2;
        const double h = rel_potential(eos, rho, r) * inv_eps2;
        const auto [he, hr] = ess_res_split(chi, rho, h);
        ess += w * he;
        res += w * hr;
      }
    }
  }
  RelEnergyParts parts;
  parts.kinetic = static_cast<double>(kin) * vol;
  parts.ess = static_cast<double>(ess) * vol;
  parts.res = static_cast<double>(res) * vol;
  parts.potential = parts.ess + parts.res;
  parts.total = parts.kinetic + parts.potential;
  return parts;
}

}  // namespace

RelEnergyParts relative_energy(const EmpiricalMeasure& measure, const Field& r,
                               const VectorField& U, const EosModel& eos,
                               const std::optional<SubBox>& subset) {
  const TorusGrid& grid = measure.grid();
  if (r.size() != grid.cell_count())
    throw std::invalid_argument("relative_energy: reference density shape mismatch");
  for (int d = 0; d < grid.dim; ++d)
    if (U[d].size() != grid.cell_count())
      throw std::invalid_argument("relative_energy: reference velocity shape mismatch");
  return relative_energy_impl(
      measure, [&](std::size_t c) { return r[c]; },
      [&](std::size_t c) {
        return std::array<double, 2>{U[0][c], grid.dim == 2 ? U[1][c] : 0.0};
      },
      eos, subset);
}

RelEnergyParts relative_energy(const EmpiricalMeasure& measure, double r,
                               const std::array<double, 2>& U, const EosModel& eos,
                               const std::optional<SubBox>& subset) {
  return relative_energy_impl(
      measure, [&](std::size_t) { return r; }, [&](std::size_t) { return U; }, eos, subset);
}

double dissipation_defect(double energy_initial, double energy_at_tau) {
  return std::max(energy_initial - energy_at_tau, 0.0);
}

JensenReport jensen_check(const EmpiricalMeasure& measure, const PhaseFunction& F, double q) {
  if (!(q >= 1.0)) throw std::domain_error("jensen_check: q must be at least 1");
  const Field abs_f = expect(measure, [&](double rho, const std::array<double, 2>& m) {
    return std::abs(F(rho, m));
  });
  const Field abs_f_q = expect(measure, [&](double rho, const std::array<double, 2>& m) {
    return std::pow(std::abs(F(rho, m)), q);
  });
  JensenReport report;
  for (std::size_t c = 0; c < abs_f.size(); ++c)
    report.max_violation = std::max(report.max_violation,
                                    std::pow(abs_f[c], q) - abs_f_q[c]);
  report.holds = report.max_violation <= 1e-12;
  return report;
}

MomentReport moment_bounds(const EmpiricalMeasure& measure, const CutoffChi& chi,
                           const EosModel& eos) {
  const TorusGrid& grid = measure.grid();
  const double eps = measure.eps();
  const double gamma = eos.gamma;
  const double rb = eos.rho_bar;

  const Field fluct_ess = expect(measure, [&](double rho, const std::array<double, 2>&) {
    return chi(rho) * (rho - rb) / eps;
  });
  const Field rho_res = expect(measure, [&](double rho, const std::array<double, 2>&) {
    return (1.0 - chi(rho)) * rho;
  });
  const Field fluct_abs = expect(measure, [&](double rho, const std::array<double, 2>&) {
    return std::abs(rho - rb) / eps;
  });

  auto momentum_part = [&](bool essential) {
    Field mag(grid.cell_count(), 0.0);
    Field comp[2];
    for (int d = 0; d < grid.dim; ++d)
      comp[d] = expect(measure, [&](double rho, const std::array<double, 2>& m) {
        const double c = essential ? chi(rho) : 1.0 - chi(rho);
        return c * m[d];
      });
    for (std::size_t c = 0; c < mag.size(); ++c)
      mag[c] = grid.dim == 2 ? std::hypot(comp[0][c], comp[1][c]) : std::abs(comp[0][c]);
    return mag;
  };

  MomentReport report;
  report.l2_density_fluct_ess = lp_norm(grid, fluct_ess, 2.0);
  Field scaled_res(rho_res);
  const double scale = std::pow(eps, -2.0 / gamma);
  for (double& v : scaled_res) v *= scale;
  report.lgamma_density_res = lp_norm(grid, scaled_res, gamma);
  report.l2_momentum_ess = lp_norm(grid, momentum_part(true), 2.0);
  report.lq_momentum_res = lp_norm(grid, momentum_part(false), 2.0 * gamma / (gamma + 1.0));
  report.l1_density_fluct = lp_norm(grid, fluct_abs, 1.0);
  return report;
}

double ensemble_energy(const EmpiricalMeasure& measure, const EosModel& eos) {
  double e = 0.0;
  for (std::size_t k = 0; k < measure.size(); ++k)
    e += measure.weights[k] * total_energy(measure.members[k], eos);
  return e;
}

EnsembleTrajectory vanishing_viscosity_ensemble(const ConservedState& init,
                                                const std::vector<double>& deltas, double T,
                                                const CompSolverConfig& base_config,
                                                const std::vector<double>& output_times) {
  if (deltas.empty())
    throw std::invalid_argument("vanishing_viscosity_ensemble: need at least one delta");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0))
      throw std::invalid_argument("vanishing_viscosity_ensemble: deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw std::invalid_argument("vanishing_viscosity_ensemble: deltas must decrease");
  }

  // per-member runs at shared output times
  std::vector<std::vector<ConservedState>> snaps(deltas.size());
  std::vector<double> initial_energy(deltas.size());
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    CompSolverConfig cfg(base_config);
    cfg.viscosity_delta = deltas[k];
    initial_energy[k] = total_energy(init, cfg.eos);
    run_with_observer(init, T, cfg, output_times,
                      [&](const ConservedState& s) { snaps[k].push_back(s); });
  }

  EnsembleTrajectory out;
  const std::size_t n_times = snaps.front().size();
  out.ledger.member_defect.assign(deltas.size(), std::vector<double>(n_times, 0.0));
  for (std::size_t t = 0; t < n_times; ++t) {
    std::vector<ConservedState> members;
    members.reserve(deltas.size());
    for (std::size_t k = 0; k < deltas.size(); ++k) members.push_back(snaps[k][t]);
    out.times.push_back(members.front().time);
    EmpiricalMeasure measure = EmpiricalMeasure::equal_weights(std::move(members));

    double e_bar0 = 0.0, e_bar = 0.0;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      const double ek = total_energy(measure.members[k], base_config.eos);
      out.ledger.member_defect[k][t] = dissipation_defect(initial_energy[k], ek);
      e_bar0 += measure.weights[k] * initial_energy[k];
      e_bar += measure.weights[k] * ek;
    }
    out.ledger.ensemble_defect.push_back(dissipation_defect(e_bar0, e_bar));
    out.measures.push_back(std::move(measure));
  }
  out.ledger.times = out.times;
  return out;
}

}  // namespace machlab
