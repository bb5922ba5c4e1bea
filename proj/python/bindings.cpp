#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "machlab/acoustics.hpp"
#include "machlab/comp_euler.hpp"
#include "machlab/eos.hpp"
#include "machlab/incomp_euler.hpp"
#include "machlab/initial_data.hpp"
#include "machlab/measures.hpp"
#include "machlab/operators.hpp"
#include "machlab/sweeps.hpp"

namespace py = pybind11;
using namespace machlab;

namespace {

// fields cross the boundary as numpy arrays shaped like the grid
py::array_t<double> to_numpy(const TorusGrid& g, const Field& f) {
  if (g.dim == 1) return py::array_t<double>({static_cast<py::ssize_t>(g.cells[0])}, f.data());
  return py::array_t<double>(
      {static_cast<py::ssize_t>(g.cells[0]), static_cast<py::ssize_t>(g.cells[1])}, f.data());
}

Field from_numpy(const TorusGrid& g, const py::array_t<double, py::array::c_style |
                                                                 py::array::forcecast>& a) {
  if (static_cast<std::size_t>(a.size()) != g.cell_count())
    throw std::invalid_argument("array size does not match grid");
  return Field(a.data(), a.data() + a.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "low Mach number laboratory for the compressible Euler system";

  py::class_<EosModel>(m, "EosModel")
      .def(py::init([](double a, double gamma, double rho_bar) {
             EosModel eos{a, gamma, rho_bar};
             eos.validate();
             return eos;
           }),
           py::arg("a") = 1.0, py::arg("gamma") = 2.0, py::arg("rho_bar") = 1.0)
      .def_readonly("a", &EosModel::a)
      .def_readonly("gamma", &EosModel::gamma)
      .def_readonly("rho_bar", &EosModel::rho_bar);

  m.def("pressure", &pressure, py::arg("eos"), py::arg("rho"));
  m.def("pressure_potential", &pressure_potential, py::arg("eos"), py::arg("rho"));
  m.def("rel_potential", &rel_potential, py::arg("eos"), py::arg("rho"), py::arg("r"));
  m.def("growth_constants", &growth_constants, py::arg("eos"), py::arg("rho_max"));
  m.def("convexity_constants", &convexity_constants, py::arg("eos"), py::arg("delta"),
        py::arg("residual_cap_factor") = 1.0e6);

  py::class_<CutoffChi>(m, "CutoffChi")
      .def(py::init<double>(), py::arg("rho_bar") = 1.0)
      .def("__call__", &CutoffChi::operator());
  m.def("ess_res_split", &ess_res_split, py::arg("chi"), py::arg("rho"), py::arg("value"));

  py::class_<TorusGrid>(m, "TorusGrid")
      .def(py::init([](int dim, std::vector<int> cells, std::vector<double> lengths) {
             return TorusGrid(dim, {cells.at(0), cells.size() > 1 ? cells.at(1) : 1},
                              {lengths.at(0), lengths.size() > 1 ? lengths.at(1) : lengths.at(0)});
           }),
           py::arg("dim"), py::arg("cells"), py::arg("lengths"))
      .def_readonly("dim", &TorusGrid::dim)
      .def_property_readonly("cells",
                             [](const TorusGrid& g) {
                               return g.dim == 1 ? std::vector<int>{g.cells[0]}
                                                 : std::vector<int>{g.cells[0], g.cells[1]};
                             })
      .def("cell_volume", &TorusGrid::cell_volume)
      .def("volume", &TorusGrid::volume);

  m.def("helmholtz_project",
        [](const TorusGrid& g, py::array_t<double> ux, py::array_t<double> uy) {
          VectorField u(g);
          u[0] = from_numpy(g, ux);
          if (g.dim == 2) u[1] = from_numpy(g, uy);
          const VectorField p = helmholtz_project(g, u);
          py::tuple out(g.dim);
          for (int d = 0; d < g.dim; ++d) out[d] = to_numpy(g, p[d]);
          return out;
        },
        py::arg("grid"), py::arg("ux"), py::arg("uy") = py::array_t<double>());

  m.def("lp_norm",
        [](const TorusGrid& g, py::array_t<double> f, double p) {
          return lp_norm(g, from_numpy(g, f), p);
        },
        py::arg("grid"), py::arg("field"), py::arg("p"));

  py::class_<ConservedState>(m, "ConservedState")
      .def_property_readonly("rho",
                             [](const ConservedState& s) { return to_numpy(s.grid, s.rho); })
      .def_property_readonly("momentum",
                             [](const ConservedState& s) {
                               py::tuple out(s.grid.dim);
                               for (int d = 0; d < s.grid.dim; ++d)
                                 out[d] = to_numpy(s.grid, s.mom[d]);
                               return out;
                             })
      .def_readonly("eps", &ConservedState::eps)
      .def_readonly("time", &ConservedState::time);

  py::enum_<TimeIntegrator>(m, "TimeIntegrator")
      .value("forward_euler", TimeIntegrator::ForwardEuler)
      .value("ssp_rk2", TimeIntegrator::SspRk2);

  py::class_<CompSolverConfig>(m, "CompSolverConfig")
      .def(py::init([](const EosModel& eos, double eps, double cfl, double viscosity_delta,
                       bool low_mach_fix, double rho_floor) {
             CompSolverConfig cfg;
             cfg.eos = eos;
             cfg.eps = eps;
             cfg.cfl = cfl;
             cfg.viscosity_delta = viscosity_delta;
             cfg.low_mach_fix = low_mach_fix;
             cfg.rho_floor = rho_floor;
             return cfg;
           }),
           py::arg("eos"), py::arg("eps"), py::arg("cfl") = 0.45,
           py::arg("viscosity_delta") = 0.0, py::arg("low_mach_fix") = false,
           py::arg("rho_floor") = 1e-10);

  py::class_<EnergyRecord>(m, "EnergyRecord")
      .def_readonly("step", &EnergyRecord::step)
      .def_readonly("time", &EnergyRecord::time)
      .def_readonly("dt", &EnergyRecord::dt)
      .def_readonly("total", &EnergyRecord::total)
      .def_readonly("kinetic", &EnergyRecord::kinetic)
      .def_readonly("potential_over_eps2", &EnergyRecord::potential_over_eps2);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("snapshots", &Trajectory::snapshots)
      .def_readonly("energy_log", &Trajectory::energy_log);

  m.def("make_conserved_state",
        [](const TorusGrid& g, py::array_t<double> rho, std::vector<py::array_t<double>> mom,
           double eps) {
          if (static_cast<int>(mom.size()) != g.dim)
            throw std::invalid_argument("need one momentum component per grid dimension");
          ConservedState s(g, eps);
          s.rho = from_numpy(g, rho);
          for (int d = 0; d < g.dim; ++d) s.mom[d] = from_numpy(g, mom[d]);
          s.validate_positive();
          return s;
        },
        py::arg("grid"), py::arg("rho"), py::arg("momentum"), py::arg("eps"));

  m.def("total_energy", &total_energy, py::arg("state"), py::arg("eos"));
  m.def("max_stable_dt", &max_stable_dt, py::arg("state"), py::arg("config"));
  m.def("run", &run, py::arg("init"), py::arg("T"), py::arg("config"), py::arg("output_times"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<VelocitySpec>(m, "VelocitySpec")
      .def_static("zero", &VelocitySpec::zero)
      .def_static("taylor_green", &VelocitySpec::taylor_green, py::arg("amplitude") = 1.0)
      .def_static("vortex_pair", &VelocitySpec::vortex_pair, py::arg("amplitude") = 1.0,
                  py::arg("width") = 0.25, py::arg("separation") = 1.0)
      .def_static("band_limited_random", &VelocitySpec::band_limited_random, py::arg("amplitude"),
                  py::arg("k_min"), py::arg("k_max"), py::arg("seed"));

  py::class_<GaussianSpec>(m, "GaussianSpec")
      .def(py::init([](double amplitude, double width, std::vector<double> center) {
             GaussianSpec s;
             s.amplitude = amplitude;
             s.width = width;
             s.center = {center.at(0), center.size() > 1 ? center.at(1) : 0.0};
             return s;
           }),
           py::arg("amplitude"), py::arg("width"),
           py::arg("center") = std::vector<double>{0.0, 0.0});

  m.def("wellprepared_init", &wellprepared_init, py::arg("grid"), py::arg("eos"), py::arg("v0"),
        py::arg("eps"));
  m.def("illprepared_init", &illprepared_init, py::arg("grid"), py::arg("eos"), py::arg("v0"),
        py::arg("s0"), py::arg("phi0"), py::arg("eps"));
  m.def("make_velocity",
        [](const TorusGrid& g, const VelocitySpec& spec) {
          const VectorField v = make_velocity(g, spec);
          py::tuple out(g.dim);
          for (int d = 0; d < g.dim; ++d) out[d] = to_numpy(g, v[d]);
          return out;
        },
        py::arg("grid"), py::arg("spec"));
  m.def("gaussian_field",
        [](const TorusGrid& g, const GaussianSpec& spec) { return to_numpy(g, gaussian_field(g, spec)); },
        py::arg("grid"), py::arg("spec"));

  py::class_<IncompressibleState>(m, "IncompressibleState")
      .def(py::init([](const TorusGrid& g, py::array_t<double> omega) {
             return IncompressibleState(g, from_numpy(g, omega));
           }),
           py::arg("grid"), py::arg("omega"))
      .def_property_readonly("omega",
                             [](const IncompressibleState& s) { return to_numpy(s.grid, s.omega); })
      .def_readonly("time", &IncompressibleState::time);

  m.def("make_vorticity",
        [](const TorusGrid& g, const VelocitySpec& spec) { return to_numpy(g, make_vorticity(g, spec)); },
        py::arg("grid"), py::arg("spec"));
  m.def("velocity_from_vorticity",
        [](const TorusGrid& g, py::array_t<double> omega) {
          const VectorField v = velocity_from_vorticity(g, from_numpy(g, omega));
          return py::make_tuple(to_numpy(g, v[0]), to_numpy(g, v[1]));
        },
        py::arg("grid"), py::arg("omega"));
  m.def("pressure_recover",
        [](const IncompressibleState& s) { return to_numpy(s.grid, pressure_recover(s)); },
        py::arg("state"));
  m.def("incomp_run",
        [](const IncompressibleState& init, double T, const std::vector<double>& times) {
          return incomp_run(init, T, times);
        },
        py::arg("init"), py::arg("T"), py::arg("output_times"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<AcousticState>(m, "AcousticState")
      .def(py::init([](const TorusGrid& g, py::array_t<double> s,
                       std::vector<py::array_t<double>> grad_phi, double eps,
                       const EosModel& eos) {
             if (static_cast<int>(grad_phi.size()) != g.dim)
               throw std::invalid_argument("need one grad_phi component per grid dimension");
             VectorField gp(g);
             for (int d = 0; d < g.dim; ++d) gp[d] = from_numpy(g, grad_phi[d]);
             return AcousticState(g, from_numpy(g, s), gp, eps, eos);
           }),
           py::arg("grid"), py::arg("s"), py::arg("grad_phi"), py::arg("eps"), py::arg("eos"))
      .def_property_readonly("s", [](const AcousticState& a) { return to_numpy(a.grid, a.s); })
      .def_property_readonly("grad_phi",
                             [](const AcousticState& a) {
                               py::tuple out(a.grid.dim);
                               for (int d = 0; d < a.grid.dim; ++d)
                                 out[d] = to_numpy(a.grid, a.grad_phi[d]);
                               return out;
                             })
      .def_readonly("time", &AcousticState::time)
      .def_readonly("eps", &AcousticState::eps);

  m.def("acoustic_step_exact", &acoustic_step_exact, py::arg("state"), py::arg("dt"));
  m.def("acoustic_energy", &acoustic_energy, py::arg("state"));
  m.def("sobolev_energy", &sobolev_energy, py::arg("state"), py::arg("k"));

  py::class_<DecaySample>(m, "DecaySample")
      .def_readonly("time", &DecaySample::time)
      .def_readonly("tau_over_eps", &DecaySample::tau_over_eps)
      .def_readonly("sup_s_sq", &DecaySample::sup_s_sq)
      .def_readonly("sup_grad_phi_sq", &DecaySample::sup_grad_phi_sq);
  py::class_<DecayResult>(m, "DecayResult")
      .def_readonly("samples", &DecayResult::samples)
      .def_readonly("fitted_slope", &DecayResult::fitted_slope)
      .def_readonly("window_max_time", &DecayResult::window_max_time);
  m.def("decay_experiment",
        [](const AcousticState& init, std::vector<double> halfwidth,
           const std::vector<double>& times) {
          return decay_experiment(
              init, SubBox::centered({halfwidth.at(0),
                                      halfwidth.size() > 1 ? halfwidth.at(1) : halfwidth.at(0)}),
              times);
        },
        py::arg("init"), py::arg("subset_halfwidth"), py::arg("sample_times"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<EmpiricalMeasure>(m, "EmpiricalMeasure")
      .def_static("dirac", &EmpiricalMeasure::dirac, py::arg("state"))
      .def_static("equal_weights", &EmpiricalMeasure::equal_weights, py::arg("members"))
      .def("__len__", &EmpiricalMeasure::size);

  py::class_<RelEnergyParts>(m, "RelEnergyParts")
      .def_readonly("total", &RelEnergyParts::total)
      .def_readonly("kinetic", &RelEnergyParts::kinetic)
      .def_readonly("potential", &RelEnergyParts::potential)
      .def_readonly("ess", &RelEnergyParts::ess)
      .def_readonly("res", &RelEnergyParts::res);

  m.def("relative_energy",
        [](const EmpiricalMeasure& measure, double r, std::vector<double> U, const EosModel& eos) {
          return relative_energy(measure, r, {U.at(0), U.size() > 1 ? U.at(1) : 0.0}, eos);
        },
        py::arg("measure"), py::arg("r"), py::arg("U"), py::arg("eos"));
  m.def("dissipation_defect", &dissipation_defect, py::arg("energy_initial"),
        py::arg("energy_at_tau"));
  m.def("jensen_max_violation",
        [](const EmpiricalMeasure& measure, double q) {
          return jensen_check(measure,
                              [](double rho, const std::array<double, 2>& mom) {
                                return mom[0] - 0.5 * rho;
                              },
                              q)
              .max_violation;
        },
        py::arg("measure"), py::arg("q"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("eps", &SweepRow::eps)
      .def_readonly("failed", &SweepRow::failed)
      .def_readonly("sup_rel_energy", &SweepRow::sup_rel_energy)
      .def_readonly("kinetic_part", &SweepRow::kinetic_part)
      .def_readonly("potential_part", &SweepRow::potential_part)
      .def_readonly("ess_part", &SweepRow::ess_part)
      .def_readonly("res_part", &SweepRow::res_part)
      .def_readonly("defect_d", &SweepRow::defect_d)
      .def_readonly("steps", &SweepRow::steps)
      .def_readonly("corrected_sup", &SweepRow::corrected_sup);
  py::class_<SweepReport>(m, "SweepReport")
      .def_readonly("rows", &SweepReport::rows)
      .def_readonly("fitted_order", &SweepReport::fitted_order)
      .def_readonly("fitted_order_corrected", &SweepReport::fitted_order_corrected);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init([](const EosModel& eos, const TorusGrid& grid, std::vector<double> eps_list,
                       double final_time, int output_count, const VelocitySpec& v0,
                       bool low_mach_fix, int threads) {
             SweepConfig cfg;
             cfg.eos = eos;
             cfg.grid = grid;
             cfg.eps_list = std::move(eps_list);
             cfg.final_time = final_time;
             cfg.output_count = output_count;
             cfg.v0 = v0;
             cfg.solver.low_mach_fix = low_mach_fix;
             cfg.threads = threads;
             return cfg;
           }),
           py::arg("eos"), py::arg("grid"), py::arg("eps_list"), py::arg("final_time"),
           py::arg("output_count") = 10, py::arg("v0") = VelocitySpec::taylor_green(1.0),
           py::arg("low_mach_fix") = true, py::arg("threads") = 1);

  m.def("mach_sweep_wellprepared", &mach_sweep_wellprepared, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
}
