#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tglab/bounds.hpp"
#include "tglab/identities.hpp"
#include "tglab/oracle.hpp"
#include "tglab/records.hpp"

namespace py = pybind11;
using namespace tglab;

PYBIND11_MODULE(_tglab, m) {
  m.doc() = "Inviscid stratified shear-flow stability: spectral modes, integral identities and growth bounds";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<ProfileKind>(m, "ProfileKind")
      .value("couette", ProfileKind::couette)
      .value("tanh_shear", ProfileKind::tanh_shear)
      .value("sinusoidal", ProfileKind::sinusoidal)
      .value("garcia", ProfileKind::garcia)
      .value("custom_sampled", ProfileKind::custom_sampled);

  py::class_<ProfileSample>(m, "ProfileSample")
      .def_readonly("u", &ProfileSample::u)
      .def_readonly("d2u", &ProfileSample::d2u)
      .def_readonly("gbeta", &ProfileSample::gbeta);

  py::class_<FlowProfile>(m, "FlowProfile")
      .def_property_readonly("kind", &FlowProfile::kind)
      .def_property_readonly("z1", &FlowProfile::z1)
      .def_property_readonly("z2", &FlowProfile::z2)
      .def_property_readonly("gbeta_scale", &FlowProfile::gbeta_scale)
      .def_property_readonly("params", &FlowProfile::params)
      .def("eval", &FlowProfile::eval, py::arg("z"))
      .def("with_gbeta_scale", &FlowProfile::with_gbeta_scale, py::arg("scale"))
      .def("__repr__", [](const FlowProfile& p) { return "FlowProfile(" + profile_to_json(p).dump() + ")"; });

  m.def("make_profile", py::overload_cast<std::string_view, const ParamMap&>(&make_profile), py::arg("kind"),
        py::arg("params"));
  m.def("make_custom_profile", &make_custom_profile, py::arg("z1"), py::arg("z2"), py::arg("u"), py::arg("d2u"),
        py::arg("gbeta"), py::arg("gbeta_scale") = 1.0);
  m.def("load_sampled_profile", &load_sampled_profile, py::arg("path"), py::arg("gbeta_scale") = 1.0);
  m.def("profile_kinds", [] {
    std::vector<std::string> names;
    for (const auto& e : profile_catalog()) names.emplace_back(to_string(e.kind));
    return names;
  });

  py::class_<GridMap>(m, "GridMap")
      .def(py::init<>())
      .def(py::init([](double center, double width) { return GridMap{center, width}; }), py::arg("center"),
           py::arg("width"))
      .def_readwrite("center", &GridMap::center)
      .def_readwrite("width", &GridMap::width)
      .def_static("centered", &GridMap::centered, py::arg("z1"), py::arg("z2"));

  py::class_<SpectralGrid>(m, "SpectralGrid")
      .def(py::init<int, double, double, GridMap>(), py::arg("n"), py::arg("z1"), py::arg("z2"),
           py::arg("map") = GridMap{})
      .def_property_readonly("n", &SpectralGrid::n)
      .def_property_readonly("nodes", &SpectralGrid::nodes)
      .def_property_readonly("d1", &SpectralGrid::d1)
      .def_property_readonly("d2", &SpectralGrid::d2)
      .def_property_readonly("weights", &SpectralGrid::weights)
      .def("integrate", py::overload_cast<const Eigen::VectorXd&>(&SpectralGrid::integrate, py::const_),
           py::arg("values"));

  py::class_<ProfileExtrema>(m, "ProfileExtrema")
      .def_readonly("u_min", &ProfileExtrema::u_min)
      .def_readonly("u_max", &ProfileExtrema::u_max)
      .def_readonly("d2u_sq_max", &ProfileExtrema::d2u_sq_max)
      .def_readonly("gbeta_d2u_abs_max", &ProfileExtrema::gbeta_d2u_abs_max)
      .def_readonly("gbeta_max", &ProfileExtrema::gbeta_max);
  m.def("profile_extrema", &profile_extrema, py::arg("profile"), py::arg("grid"));

  py::class_<ModalSolution>(m, "ModalSolution")
      .def_readonly("alpha", &ModalSolution::alpha)
      .def_readonly("c", &ModalSolution::c)
      .def_readonly("w", &ModalSolution::w)
      .def_readonly("nodes", &ModalSolution::nodes)
      .def_readonly("n", &ModalSolution::n)
      .def_readonly("residual", &ModalSolution::residual)
      .def_readonly("drift", &ModalSolution::drift)
      .def_readonly("converged", &ModalSolution::converged)
      .def("__repr__", [](const ModalSolution& s) {
        return "ModalSolution(alpha=" + format_double(s.alpha) + ", c=" + format_double(s.c_r()) + "+" +
               format_double(s.c_i()) + "j)";
      });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("n", &SolverConfig::n)
      .def_readwrite("cluster", &SolverConfig::cluster)
      .def_readwrite("cluster_width", &SolverConfig::cluster_width);
  m.def("solver_grid", &solver_grid, py::arg("profile"), py::arg("config") = SolverConfig{});
  m.def(
      "unstable_modes",
      [](const FlowProfile& profile, double alpha, int n, bool cluster) {
        SolverConfig cfg;
        cfg.n = n;
        cfg.cluster = cluster;
        py::gil_scoped_release release;
        return unstable_modes(profile, alpha, cfg);
      },
      py::arg("profile"), py::arg("alpha"), py::arg("n") = 128, py::arg("cluster") = true);

  py::class_<IdentityReport>(m, "IdentityReport")
      .def_readonly("energy_real", &IdentityReport::energy_real)
      .def_readonly("energy_imag", &IdentityReport::energy_imag)
      .def_readonly("curvature_real", &IdentityReport::curvature_real)
      .def_readonly("curvature_sum", &IdentityReport::curvature_sum)
      .def_readonly("consistency_gap", &IdentityReport::consistency_gap)
      .def_readonly("alt_cross_residual", &IdentityReport::alt_cross_residual)
      .def_readonly("alt_sign_residual", &IdentityReport::alt_sign_residual)
      .def_readonly("passed", &IdentityReport::passed);
  m.def("identity_report", &identity_report, py::arg("mode"), py::arg("profile"), py::arg("grid"),
        py::arg("tol") = default_identity_tol);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("semicircle_slack", &BoundReport::semicircle_slack)
      .def_readonly("inside_semicircle", &BoundReport::inside_semicircle)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("slack", &BoundReport::slack)
      .def_readonly("alpha_ci", &BoundReport::alpha_ci)
      .def_readonly("small_gbeta_ok", &BoundReport::small_gbeta_ok)
      .def_readonly("bound_holds", &BoundReport::bound_holds);
  m.def(
      "growth_bound_check",
      [](const ModalSolution& mode, const ProfileExtrema& extrema, double negligible_ratio) {
        return growth_bound_check(mode, extrema, BoundConfig{negligible_ratio});
      },
      py::arg("mode"), py::arg("extrema"), py::arg("negligible_ratio") = 0.01);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("alpha", &SweepRow::alpha)
      .def_readonly("n_unstable", &SweepRow::n_unstable)
      .def_readonly("max_ci", &SweepRow::max_ci)
      .def_readonly("alpha_ci", &SweepRow::alpha_ci)
      .def_readonly("rhs_cuberoot", &SweepRow::rhs_cuberoot)
      .def_readonly("semicircle_ok", &SweepRow::semicircle_ok)
      .def_readonly("identities_ok", &SweepRow::identities_ok)
      .def_readonly("bound_ok", &SweepRow::bound_ok)
      .def_readonly("error", &SweepRow::error);
  m.def(
      "decay_sweep",
      [](const FlowProfile& profile, const std::vector<double>& alphas, int n, unsigned threads) {
        SweepConfig cfg;
        cfg.solver.n = n;
        cfg.threads = threads;
        py::gil_scoped_release release;
        return decay_sweep(profile, alphas, cfg).rows;
      },
      py::arg("profile"), py::arg("alphas"), py::arg("n") = 128, py::arg("threads") = 0);
  m.def("linspace", &linspace, py::arg("lo"), py::arg("hi"), py::arg("count"));

  py::class_<ShootingResult>(m, "ShootingResult")
      .def_readonly("c", &ShootingResult::c)
      .def_readonly("mismatch", &ShootingResult::mismatch)
      .def_readonly("iterations", &ShootingResult::iterations)
      .def_readonly("converged", &ShootingResult::converged);
  m.def("shoot", &shoot, py::arg("profile"), py::arg("alpha"), py::arg("c"), py::arg("steps") = 4096);
  m.def(
      "find_eigenvalue",
      [](const FlowProfile& profile, double alpha, cplx guess, int steps, int max_iterations) {
        OracleConfig cfg;
        cfg.steps = steps;
        cfg.max_iterations = max_iterations;
        return find_eigenvalue(profile, alpha, guess, cfg);
      },
      py::arg("profile"), py::arg("alpha"), py::arg("guess"), py::arg("steps") = 4096,
      py::arg("max_iterations") = 100);
}
