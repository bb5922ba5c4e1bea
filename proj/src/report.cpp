#include "machlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace machlab {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot open " + path);
  return out;
}

const char* velocity_name(VelocitySpec::Kind kind) {
  switch (kind) {
    case VelocitySpec::Kind::Zero: return "zero";
    case VelocitySpec::Kind::TaylorGreen: return "taylor-green";
    case VelocitySpec::Kind::VortexPair: return "vortex-pair";
    case VelocitySpec::Kind::BandLimitedRandom: return "band-limited-random";
  }
  return "unknown";
}

nlohmann::json config_echo(const SweepConfig& config) {
  nlohmann::json j;
  j["eos"] = {{"a", config.eos.a}, {"gamma", config.eos.gamma}, {"rho_bar", config.eos.rho_bar}};
  j["grid"] = {{"dim", config.grid.dim},
               {"cells", {config.grid.cells[0], config.grid.cells[1]}},
               {"lengths", {config.grid.lengths[0], config.grid.lengths[1]}}};
  j["eps"] = config.eps_list;
  j["final_time"] = config.final_time;
  j["output_times"] = config.resolved_output_times();
  j["solver"] = {{"cfl", config.solver.cfl},
                 {"integrator",
                  config.solver.integrator == TimeIntegrator::SspRk2 ? "ssp-rk2" : "forward-euler"},
                 {"low_mach_fix", config.solver.low_mach_fix},
                 {"rho_floor", config.solver.rho_floor}};
  j["v0"] = {{"name", velocity_name(config.v0.kind)},
             {"amplitude", config.v0.amplitude},
             {"seed", config.v0.seed}};
  return j;
}

// minimal log-log scatter+line plot
void write_loglog_svg(std::ofstream& out, const std::vector<double>& x,
                      const std::vector<double>& y, const std::string& xlabel,
                      const std::string& ylabel,
                      const std::vector<double>& x2 = {}, const std::vector<double>& y2 = {}) {
  const int w = 640, h = 480, ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto scan = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
      xmin = std::min(xmin, std::log10(xs[i]));
      xmax = std::max(xmax, std::log10(xs[i]));
      ymin = std::min(ymin, std::log10(ys[i]));
      ymax = std::max(ymax, std::log10(ys[i]));
    }
  };
  scan(x, y);
  scan(x2, y2);
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  auto px = [&](double v) { return ml + (std::log10(v) - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto py = [&](double v) { return h - mb - (std::log10(v) - ymin) / (ymax - ymin) * (h - mt - mb); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
      << h - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
      << "\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
    const double gx = ml + (e - xmin) / (xmax - xmin) * (w - ml - mr);
    out << "<line x1=\"" << gx << "\" y1=\"" << h - mb << "\" x2=\"" << gx << "\" y2=\""
        << h - mb + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << gx << "\" y=\"" << h - mb + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e) {
    const double gy = h - mb - (e - ymin) / (ymax - ymin) * (h - mt - mb);
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << gy << "\" x2=\"" << ml << "\" y2=\"" << gy
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << gy + 4
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  out << "<text x=\"15\" y=\"" << (mt + h - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (mt + h - mb) / 2 << ")\">" << ylabel << "</text>\n";

  auto draw = [&](const std::vector<double>& xs, const std::vector<double>& ys,
                  const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
      out << px(xs[i]) << "," << py(ys[i]) << " ";
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
      out << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
  };
  draw(x, y, "#1f77b4");
  if (!x2.empty()) draw(x2, y2, "#d62728");
  out << "</svg>\n";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> emit_report(const SweepReport& report, const SweepConfig& config,
                                     const std::string& out_dir, const ReportOptions& options) {
  std::vector<std::string> written;
  const std::string base = report.ill_prepared ? "sweep_ill" : "sweep";

  if (options.csv) {
    auto out = open_out(out_dir, base + ".csv");
    out << "eps,sup_rel_energy,kinetic_part,potential_part,ess_part,res_part,defect_D,"
           "wall_time_s,steps";
    if (report.ill_prepared)
      out << ",sup_rel_energy_corrected,corrected_kinetic_part,corrected_potential_part,"
             "corrected_ess_part,corrected_res_part";
    out << "\n";
    for (const auto& r : report.rows) {
      out << format_double(r.eps) << "," << format_double(r.sup_rel_energy) << ","
          << format_double(r.kinetic_part) << "," << format_double(r.potential_part) << ","
          << format_double(r.ess_part) << "," << format_double(r.res_part) << ","
          << format_double(r.defect_d) << ","
          << format_double(options.no_timing ? 0.0 : r.wall_time_s) << "," << r.steps;
      if (report.ill_prepared)
        out << "," << format_double(r.corrected_sup) << "," << format_double(r.corrected_kinetic)
            << "," << format_double(r.corrected_potential) << ","
            << format_double(r.corrected_ess) << "," << format_double(r.corrected_res);
      out << "\n";
    }
    written.push_back(out_dir + "/" + base + ".csv");
  }

  if (options.json) {
    nlohmann::json j;
    j["config"] = config_echo(config);
    j["fitted_slope"] = report.fitted_order;
    if (report.ill_prepared) j["fitted_slope_corrected"] = report.fitted_order_corrected;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
      nlohmann::json row;
      row["eps"] = r.eps;
      row["failed"] = r.failed;
      if (r.failed) row["error"] = r.error;
      row["sup_rel_energy"] = r.sup_rel_energy;
      row["kinetic_part"] = r.kinetic_part;
      row["potential_part"] = r.potential_part;
      row["ess_part"] = r.ess_part;
      row["res_part"] = r.res_part;
      row["sup_potential_part"] = r.sup_potential_part;
      row["defect_D"] = r.defect_d;
      row["wall_time_s"] = options.no_timing ? 0.0 : r.wall_time_s;
      row["steps"] = r.steps;
      if (report.ill_prepared) {
        row["sup_rel_energy_corrected"] = r.corrected_sup;
        row["corrected_kinetic_part"] = r.corrected_kinetic;
        row["corrected_potential_part"] = r.corrected_potential;
        row["corrected_ess_part"] = r.corrected_ess;
        row["corrected_res_part"] = r.corrected_res;
      }
      j["rows"].push_back(row);
    }
    auto out = open_out(out_dir, base + ".json");
    out << j.dump(2) << "\n";
    written.push_back(out_dir + "/" + base + ".json");
  }

  if (options.svg) {
    std::vector<double> xs, ys, yc;
    for (const auto& r : report.rows)
      if (!r.failed) {
        xs.push_back(r.eps);
        ys.push_back(r.sup_rel_energy);
        yc.push_back(r.corrected_sup);
      }
    auto out = open_out(out_dir, base + ".svg");
    if (report.ill_prepared)
      write_loglog_svg(out, xs, ys, "eps", "sup relative energy on B", xs, yc);
    else
      write_loglog_svg(out, xs, ys, "eps", "sup relative energy");
    written.push_back(out_dir + "/" + base + ".svg");
  }
  return written;
}

std::vector<std::string> emit_decay_report(const DecayResult& result, double eps,
                                           const std::string& out_dir,
                                           const ReportOptions& options) {
  std::vector<std::string> written;
  if (options.csv) {
    auto out = open_out(out_dir, "decay.csv");
    out << "time,tau_over_eps,sup_s_sq_on_B,sup_gradphi_sq_on_B,fitted_slope\n";
    for (const auto& s : result.samples)
      out << format_double(s.time) << "," << format_double(s.tau_over_eps) << ","
          << format_double(s.sup_s_sq) << "," << format_double(s.sup_grad_phi_sq) << ",\n";
    out << ",,,," << format_double(result.fitted_slope) << "\n";
    written.push_back(out_dir + "/decay.csv");
  }
  if (options.json) {
    nlohmann::json j;
    j["eps"] = eps;
    j["fitted_slope"] = result.fitted_slope;
    j["window_max_time"] = result.window_max_time;
    j["samples"] = nlohmann::json::array();
    for (const auto& s : result.samples)
      j["samples"].push_back({{"time", s.time},
                              {"tau_over_eps", s.tau_over_eps},
                              {"sup_s_sq_on_B", s.sup_s_sq},
                              {"sup_gradphi_sq_on_B", s.sup_grad_phi_sq}});
    auto out = open_out(out_dir, "decay.json");
    out << j.dump(2) << "\n";
    written.push_back(out_dir + "/decay.json");
  }
  if (options.svg) {
    std::vector<double> xs, ys;
    for (const auto& s : result.samples) {
      xs.push_back(1.0 + s.tau_over_eps);
      ys.push_back(s.sup_s_sq + s.sup_grad_phi_sq);
    }
    auto out = open_out(out_dir, "decay.svg");
    write_loglog_svg(out, xs, ys, "1 + tau/eps", "sup_B |s|^2 + sup_B |grad Phi|^2");
    written.push_back(out_dir + "/decay.svg");
  }
  return written;
}

std::vector<std::string> emit_energy_log(const std::vector<EnergyRecord>& log,
                                         const std::string& out_dir) {
  auto out = open_out(out_dir, "energy.csv");
  out << "step,time,dt,total_energy,kinetic,potential_over_eps2\n";
  for (const auto& r : log)
    out << r.step << "," << format_double(r.time) << "," << format_double(r.dt) << ","
        << format_double(r.total) << "," << format_double(r.kinetic) << ","
        << format_double(r.potential_over_eps2) << "\n";
  return {out_dir + "/energy.csv"};
}

std::vector<std::string> emit_ledger(const DefectLedger& ledger, const std::string& out_dir) {
  std::vector<std::string> written;
  {
    auto out = open_out(out_dir, "ledger.csv");
    out << "time,ensemble_D";
    for (std::size_t k = 0; k < ledger.member_defect.size(); ++k) out << ",member" << k << "_D";
    out << "\n";
    for (std::size_t t = 0; t < ledger.times.size(); ++t) {
      out << format_double(ledger.times[t]) << "," << format_double(ledger.ensemble_defect[t]);
      for (const auto& member : ledger.member_defect) out << "," << format_double(member[t]);
      out << "\n";
    }
    written.push_back(out_dir + "/ledger.csv");
  }
  {
    nlohmann::json j;
    j["times"] = ledger.times;
    j["ensemble_defect"] = ledger.ensemble_defect;
    j["member_defect"] = ledger.member_defect;
    j["concentration_defect"] = {{"continuity", ledger.concentration_defect_continuity},
                                 {"momentum", ledger.concentration_defect_momentum}};
    auto out = open_out(out_dir, "ledger.json");
    out << j.dump(2) << "\n";
    written.push_back(out_dir + "/ledger.json");
  }
  return written;
}

}  // namespace machlab
