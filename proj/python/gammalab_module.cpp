// Python bindings for the main library operations.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gammalab/frequency.hpp"
#include "gammalab/gamma_norms.hpp"
#include "gammalab/heat_lab.hpp"
#include "gammalab/maxreg.hpp"
#include "gammalab/sectorial.hpp"
#include "gammalab/see_solver.hpp"
#include "gammalab/stochastic.hpp"

namespace py = pybind11;
using namespace gammalab;

PYBIND11_MODULE(_gammalab, m) {
  m.doc() = "numerical gamma-norm laboratory";

  py::class_<SpaceModel>(m, "SpaceModel")
      .def_static("lq", &SpaceModel::lq, py::arg("n"), py::arg("q"),
                  py::arg("label") = std::string())
      .def_static("hilbert", &SpaceModel::hilbert, py::arg("n"),
                  py::arg("label") = std::string())
      .def_readonly("dim", &SpaceModel::dim)
      .def_readonly("exponent", &SpaceModel::exponent)
      .def("norm", py::overload_cast<const Vector&>(&SpaceModel::norm,
                                                    py::const_));

  py::enum_<Weight>(m, "Weight")
      .value("lebesgue", Weight::lebesgue)
      .value("dt_over_t", Weight::dt_over_t)
      .value("power", Weight::power);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def_static("uniform", &TimeGrid::uniform, py::arg("t0"), py::arg("t1"),
                  py::arg("n"), py::arg("weight") = Weight::lebesgue)
      .def_static("log_spaced", &TimeGrid::log_spaced, py::arg("t0"),
                  py::arg("t1"), py::arg("per_decade"),
                  py::arg("weight") = Weight::dt_over_t)
      .def_readonly("knots", &TimeGrid::knots)
      .def("intervals", &TimeGrid::intervals)
      .def("measure", &TimeGrid::measure)
      .def("refined", &TimeGrid::refined);

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init<TimeGrid, SpaceModel, int>(), py::arg("grid"),
           py::arg("target"), py::arg("noise_dim") = 1)
      .def_static("indicator", &StepFunction::indicator)
      .def("grid", &StepFunction::grid)
      .def("dim", &StepFunction::dim)
      .def("noise_dim", &StepFunction::noise_dim)
      .def("value", py::overload_cast<int>(&StepFunction::value, py::const_))
      .def("set_value",
           [](StepFunction& f, int i, const CMatrix& v) { f.value(i) = v; });

  m.def("random_step", &random_step, py::arg("grid"), py::arg("target"),
        py::arg("noise_dim"), py::arg("seed"), py::arg("stream") = 0);

  py::class_<GammaEstimate>(m, "GammaEstimate")
      .def_readonly("value", &GammaEstimate::value)
      .def_readonly("samples", &GammaEstimate::samples)
      .def_readonly("stderr", &GammaEstimate::stderr_);

  m.def("gamma_norm_hilbert", &gamma_norm_hilbert);
  m.def("gamma_norm_mc", &gamma_norm_mc, py::arg("f"), py::arg("samples"),
        py::arg("seed"), py::arg("stream") = 0);
  m.def("gamma_norm_sqfn", &gamma_norm_sqfn);
  m.def("gamma_norm", &gamma_norm);
  m.def("gamma_s_norm", &gamma_s_norm, py::arg("f"), py::arg("s"));
  m.def("hardy_check", [](const StepFunction& f, double alpha) {
    const HardyPair hp = hardy_check(f, alpha);
    return py::make_tuple(hp.lhs, hp.rhs);
  });

  py::class_<HoloFn>(m, "HoloFn")
      .def_static("sqrt_exp", &HoloFn::sqrt_exp)
      .def_static("z_over_1pz_sq", &HoloFn::z_over_1pz_sq)
      .def_static("power_exp", &HoloFn::power_exp)
      .def("__call__", &HoloFn::operator());
  m.def("sqfn_constant", &sqfn_constant);

  py::class_<SectorialOp>(m, "SectorialOp")
      .def(py::init<const Matrix&>())
      .def_static("diagonal", &SectorialOp::diagonal)
      .def("dim", &SectorialOp::dim)
      .def("angle", &SectorialOp::angle)
      .def("invertible", &SectorialOp::invertible)
      .def("semigroup", &SectorialOp::semigroup)
      .def("resolvent", &SectorialOp::resolvent)
      .def("frac_power", &SectorialOp::frac_power)
      .def("hinf_calculus", &SectorialOp::hinf_calculus, py::arg("f"),
           py::arg("sigma_contour"), py::arg("nodes_per_ray") = 256);

  m.def("maxreg_constant", &maxreg_constant, py::arg("a"), py::arg("trials"),
        py::arg("seed"), py::arg("dim_noise") = 1, py::arg("intervals") = 24,
        py::arg("horizon") = 2.0);
  m.def("dtheta_norm", &dtheta_norm, py::arg("a"), py::arg("f"),
        py::arg("theta"), py::arg("xi_max") = 0.0);
  m.def("extension_norm", &extension_norm);

  py::class_<CylindricalBM>(m, "CylindricalBM")
      .def(py::init<TimeGrid, int, int, std::uint64_t>(), py::arg("grid"),
           py::arg("noise_dim"), py::arg("samples"), py::arg("seed"))
      .def("refined", &CylindricalBM::refined)
      .def("increment", &CylindricalBM::increment)
      .def("path", &CylindricalBM::path);

  py::class_<AdaptedProcess>(m, "AdaptedProcess")
      .def_static("deterministic", &AdaptedProcess::deterministic);

  py::class_<PathEnsemble>(m, "PathEnsemble")
      .def("samples", &PathEnsemble::samples)
      .def("dim", &PathEnsemble::dim)
      .def("at", py::overload_cast<int, int>(&PathEnsemble::at, py::const_))
      .def("sample_sup", &PathEnsemble::sample_sup);

  m.def("ito_integral", &ito_integral);
  m.def("ito_isomorphism_check", [](const AdaptedProcess& g,
                                    const CylindricalBM& w, double p) {
    const IsomorphismCheck c = ito_isomorphism_check(g, w, p);
    return py::make_tuple(c.lhs, c.rhs, c.ratio);
  });
  m.def("stoch_convolve", &stoch_convolve, py::arg("a"), py::arg("g"),
        py::arg("w"), py::arg("exact_integrator") = true);
  m.def("stoch_maxreg_constant", [](const SectorialOp& a, int trials,
                                    int samples, double p, std::uint64_t seed) {
    const StochMaxregResult r = stoch_maxreg_constant(a, trials, samples, p,
                                                      seed);
    return py::make_tuple(r.constant, r.stderr_);
  });

  py::class_<ExponentRow>(m, "ExponentRow")
      .def_readonly("theta", &ExponentRow::theta)
      .def_readonly("time_exp_measured", &ExponentRow::time_exp_measured)
      .def_readonly("time_exp_paper", &ExponentRow::time_exp_paper)
      .def_readonly("space_exp_measured", &ExponentRow::space_exp_measured)
      .def_readonly("space_exp_paper", &ExponentRow::space_exp_paper)
      .def_readonly("r2", &ExponentRow::r2)
      .def_readonly("conclusive", &ExponentRow::conclusive);
  m.def("deterministic_exponent_row", &deterministic_exponent_row,
        py::arg("K"), py::arg("theta"), py::arg("seed"));
  m.def("exponent_table", &exponent_table, py::arg("K"), py::arg("thetas"),
        py::arg("q"), py::arg("s"), py::arg("b"), py::arg("samples"),
        py::arg("seed"));
}
