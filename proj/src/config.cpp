#include "machlab/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace machlab {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

EosModel parse_eos(const json& j) {
  check_keys(j, "eos", {"a", "gamma", "rho_bar"});
  EosModel eos;
  eos.a = j.value("a", 1.0);
  eos.gamma = j.value("gamma", 2.0);
  eos.rho_bar = j.value("rho_bar", 1.0);
  eos.validate();
  return eos;
}

TorusGrid parse_grid(const json& j) {
  check_keys(j, "grid", {"dim", "cells", "lengths"});
  TorusGrid g;
  g.dim = j.value("dim", 2);
  const auto cells = j.value("cells", std::vector<int>{64, 64});
  g.cells = {cells.at(0), cells.size() > 1 ? cells.at(1) : 1};
  const auto lengths = j.value("lengths", std::vector<double>{2.0, 2.0});
  g.lengths = {lengths.at(0), lengths.size() > 1 ? lengths.at(1) : lengths.at(0)};
  g.validate();
  return g;
}

GaussianSpec parse_gaussian(const json& j, const std::string& where) {
  check_keys(j, where, {"amplitude", "width", "center"});
  GaussianSpec s;
  s.amplitude = j.value("amplitude", 0.0);
  s.width = j.value("width", 0.2);
  if (!(s.width > 0.0)) throw std::invalid_argument("config: " + where + ".width must be positive");
  const auto center = j.value("center", std::vector<double>{0.0, 0.0});
  s.center = {center.at(0), center.size() > 1 ? center.at(1) : 0.0};
  return s;
}

VelocitySpec parse_velocity(const json& j) {
  check_keys(j, "v0", {"name", "amplitude", "width", "separation", "k_min", "k_max", "seed"});
  VelocitySpec s = VelocitySpec::parse(j.value("name", std::string("zero")));
  s.amplitude = j.value("amplitude", s.amplitude);
  s.width = j.value("width", s.width);
  s.separation = j.value("separation", s.separation);
  s.k_min = j.value("k_min", s.k_min);
  s.k_max = j.value("k_max", s.k_max);
  s.seed = j.value("seed", s.seed);
  return s;
}

SolverOptions parse_solver(const json& j) {
  check_keys(j, "solver", {"cfl", "integrator", "low_mach_fix", "rho_floor"});
  SolverOptions s;
  s.cfl = j.value("cfl", 0.45);
  if (!(s.cfl > 0.0 && s.cfl < 1.0))
    throw std::invalid_argument("config: solver.cfl must lie in (0, 1)");
  const std::string integ = j.value("integrator", std::string("ssp-rk2"));
  if (integ == "ssp-rk2")
    s.integrator = TimeIntegrator::SspRk2;
  else if (integ == "forward-euler")
    s.integrator = TimeIntegrator::ForwardEuler;
  else
    throw std::invalid_argument("config: unknown integrator '" + integ + "'");
  s.low_mach_fix = j.value("low_mach_fix", false);
  s.rho_floor = j.value("rho_floor", 1e-10);
  return s;
}

SubBox parse_subset(const json& j) {
  check_keys(j, "subset", {"center", "halfwidth"});
  const auto hw = j.value("halfwidth", std::vector<double>{0.5, 0.5});
  const auto center = j.value("center", std::vector<double>{0.0, 0.0});
  SubBox b;
  for (int d = 0; d < 2; ++d) {
    const double h = hw.at(d < static_cast<int>(hw.size()) ? d : 0);
    const double c = center.at(d < static_cast<int>(center.size()) ? d : 0);
    b.lo[d] = c - h;
    b.hi[d] = c + h;
  }
  return b;
}

AcceptanceThresholds parse_acceptance(const json& j) {
  check_keys(j, "acceptance",
             {"require_strictly_decreasing", "potential_part_bound", "require_plain_decreasing",
              "require_corrected_decreasing", "min_floor_ratio", "mass_rel_tol",
              "energy_step_rel_slack", "min_order", "expected_slope", "slope_tol",
              "require_defect_monotone", "require_variance_decreasing"});
  AcceptanceThresholds a;
  auto opt_bool = [&](const char* key) -> std::optional<bool> {
    if (j.contains(key)) return j.at(key).get<bool>();
    return std::nullopt;
  };
  auto opt_num = [&](const char* key) -> std::optional<double> {
    if (j.contains(key)) return j.at(key).get<double>();
    return std::nullopt;
  };
  a.require_strictly_decreasing = opt_bool("require_strictly_decreasing");
  a.potential_part_bound = opt_num("potential_part_bound");
  a.require_plain_decreasing = opt_bool("require_plain_decreasing");
  a.require_corrected_decreasing = opt_bool("require_corrected_decreasing");
  a.min_floor_ratio = opt_num("min_floor_ratio");
  a.mass_rel_tol = opt_num("mass_rel_tol");
  a.energy_step_rel_slack = opt_num("energy_step_rel_slack");
  a.min_order = opt_num("min_order");
  a.expected_slope = opt_num("expected_slope");
  a.slope_tol = opt_num("slope_tol");
  a.require_defect_monotone = opt_bool("require_defect_monotone");
  a.require_variance_decreasing = opt_bool("require_variance_decreasing");
  return a;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  const json j = json::parse(json_text);
  check_keys(j, "top level",
             {"eos", "grid", "eps", "final_time", "output_count", "output_times", "solver",
              "threads", "data", "subset", "delta_time_fraction", "enforce_wrap_window", "deltas",
              "ensemble", "decay", "acceptance", "out_dir"});

  ExperimentConfig cfg;
  if (j.contains("eos")) cfg.sweep.eos = parse_eos(j.at("eos"));
  if (j.contains("grid")) cfg.sweep.grid = parse_grid(j.at("grid"));
  cfg.sweep.eps_list = j.value("eps", std::vector<double>{0.2, 0.1, 0.05});
  cfg.sweep.final_time = j.value("final_time", 0.5);
  cfg.sweep.output_count = j.value("output_count", 10);
  cfg.sweep.output_times = j.value("output_times", std::vector<double>{});
  if (j.contains("solver")) cfg.sweep.solver = parse_solver(j.at("solver"));
  cfg.sweep.threads = j.value("threads", 1);
  if (j.contains("subset")) cfg.sweep.subset = parse_subset(j.at("subset"));
  cfg.sweep.delta_time_fraction = j.value("delta_time_fraction", 0.2);
  cfg.sweep.enforce_wrap_window = j.value("enforce_wrap_window", true);

  if (j.contains("data")) {
    const json& d = j.at("data");
    check_keys(d, "data", {"kind", "v0", "s0", "phi0"});
    cfg.data_kind = d.value("kind", std::string("well-prepared"));
    if (cfg.data_kind != "well-prepared" && cfg.data_kind != "ill-prepared")
      throw std::invalid_argument("config: data.kind must be well-prepared or ill-prepared");
    if (d.contains("v0")) cfg.sweep.v0 = parse_velocity(d.at("v0"));
    if (d.contains("s0")) cfg.sweep.s0 = parse_gaussian(d.at("s0"), "s0");
    if (d.contains("phi0")) cfg.sweep.phi0 = parse_gaussian(d.at("phi0"), "phi0");
  }

  if (j.contains("ensemble")) {
    const json& e = j.at("ensemble");
    check_keys(e, "ensemble", {"deltas", "rho_bump", "velocity_bump"});
    cfg.ensemble.deltas = e.value("deltas", std::vector<double>{});
    if (e.contains("rho_bump")) cfg.ensemble.rho_bump = parse_gaussian(e.at("rho_bump"), "rho_bump");
    if (e.contains("velocity_bump"))
      cfg.ensemble.velocity_bump = parse_gaussian(e.at("velocity_bump"), "velocity_bump");
  }
  if (j.contains("deltas")) cfg.ensemble.deltas = j.at("deltas").get<std::vector<double>>();

  if (j.contains("decay")) {
    const json& d = j.at("decay");
    check_keys(d, "decay", {"eps", "s0", "phi0", "sample_times"});
    cfg.decay.eps = d.value("eps", 0.1);
    if (d.contains("s0")) cfg.decay.s0 = parse_gaussian(d.at("s0"), "decay.s0");
    if (d.contains("phi0")) cfg.decay.phi0 = parse_gaussian(d.at("phi0"), "decay.phi0");
    cfg.decay.sample_times = d.value("sample_times", std::vector<double>{});
  }

  if (j.contains("acceptance")) cfg.acceptance = parse_acceptance(j.at("acceptance"));
  cfg.out_dir = j.value("out_dir", std::string("out"));
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

}  // namespace machlab
