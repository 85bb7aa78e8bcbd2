#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circsym/cli.hpp"
#include "circsym/conformal_map.hpp"
#include "circsym/domain.hpp"
#include "circsym/error.hpp"
#include "circsym/harness.hpp"
#include "circsym/io.hpp"
#include "circsym/power_series.hpp"

namespace py = pybind11;
using namespace circsym;

namespace {

MeanWeight weight_from_name(const std::string& name, double shift) {
  if (name == "exp") return MeanWeight::exp();
  if (name == "exp2") return MeanWeight::exp2();
  if (name == "hinge") return MeanWeight::hinge(shift);
  throw Error(ErrorKind::input, "unknown weight '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_circsym, m) {
  m.doc() = "Circular symmetrization, numerical Riemann maps and coefficient checks";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::handle(error.ptr())(e.what());
      instance.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<PowerSeries>(m, "PowerSeries")
      .def(py::init<std::vector<Complex>, double>(), py::arg("coefficients"), py::arg("rho") = 1.0)
      .def_property_readonly("coefficients", &PowerSeries::coefficients)
      .def_property_readonly("rho", &PowerSeries::rho)
      .def_property_readonly("degree", &PowerSeries::degree)
      .def("__call__", [](const PowerSeries& s, Complex z) { return eval(s, z); })
      .def("__repr__", [](const PowerSeries& s) { return "PowerSeries(degree=" + std::to_string(s.degree()) + ")"; });

  m.def("coefficients_from_samples",
        [](const std::vector<Complex>& values, double r, std::size_t degree, double rho) {
          return coefficients_from_samples(values, r, degree, rho);
        },
        py::arg("values"), py::arg("r"), py::arg("degree"), py::arg("rho") = 1.0);
  m.def("dirichlet_area", py::overload_cast<const PowerSeries&>(&dirichlet_area));
  m.def("integral_mean",
        [](const PowerSeries& s, const std::string& weight, double r, std::size_t nodes, double shift) {
          const auto phi = weight_from_name(weight, shift);
          const auto mean = nodes == 0 ? integral_mean(s, phi, r) : integral_mean(s, phi, r, nodes);
          return py::make_tuple(mean.value, mean.underflow);
        },
        py::arg("series"), py::arg("weight"), py::arg("r"), py::arg("nodes") = 0, py::arg("shift") = 0.0,
        "Returns (value, underflow) for weight in {'exp', 'exp2', 'hinge'}.");
  m.def("littlewood_check", [](const PowerSeries& s) {
    py::list rows;
    for (const auto& r : littlewood_check(s)) rows.append(py::make_tuple(r.n, r.modulus, r.bound, r.pass));
    return rows;
  });

  py::class_<BoundaryCurve>(m, "BoundaryCurve")
      .def(py::init<std::vector<Complex>, double>(), py::arg("points"), py::arg("tolerance") = -1.0)
      .def_property_readonly("points", &BoundaryCurve::points)
      .def("__len__", &BoundaryCurve::size);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("contains_origin", &RadialProfile::contains_origin)
      .def_readonly("inner_radius", &RadialProfile::inner_radius)
      .def_readonly("outer_radius", &RadialProfile::outer_radius)
      .def_property_readonly("radii",
                             [](const RadialProfile& p) {
                               std::vector<double> t;
                               for (const auto& s : p.slices) t.push_back(s.t);
                               return t;
                             })
      .def_property_readonly("measures", [](const RadialProfile& p) {
        std::vector<double> a;
        for (const auto& s : p.slices) a.push_back(s.arcs.measure());
        return a;
      });

  m.def("boundary_from_series", &boundary_from_series, py::arg("series"), py::arg("vertices"));
  m.def("winding_number", &winding_number);
  m.def("slice_measure", [](const BoundaryCurve& c, double t) { return slice_at_radius(c, t).measure(); });
  m.def("radial_profile", [](const BoundaryCurve& c, std::size_t slices) { return radial_profile(c, slices); },
        py::arg("curve"), py::arg("slices"));
  m.def("symmetrize", &symmetrize);
  m.def("symmetrized_boundary", &symmetrized_boundary);
  m.def("area_by_profile", &area_by_profile);
  m.def("area_by_shoelace", &area_by_shoelace);

  py::class_<ZipperMap>(m, "ZipperMap")
      .def_property_readonly("target", &ZipperMap::target)
      .def_property_readonly("step_count", &ZipperMap::step_count)
      .def("__call__", [](const ZipperMap& z, Complex w) { return eval_map(z, w); })
      .def("inverse", [](const ZipperMap& z, Complex w) { return eval_inverse(z, w); })
      .def("to_json", [](const ZipperMap& z) { return io::zipper_to_json(z); })
      .def_static("from_json", &io::zipper_from_json);

  m.def("build_map", &build_map, py::arg("boundary"), py::arg("target"));
  m.def("series_of_map", &series_of_map, py::arg("map"), py::arg("r"), py::arg("samples"), py::arg("degree"));

  m.def("run_pipeline_json",
        [](const PowerSeries& f, const std::string& config_json) {
          const auto cfg = config_json.empty() ? PipelineConfig{} : io::config_from_json(config_json);
          py::gil_scoped_release release;
          return io::report_to_json(run_pipeline(f, cfg));
        },
        py::arg("series"), py::arg("config_json") = "");
  m.def("default_config_json", [] { return io::config_to_json(PipelineConfig{}); });
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        "Runs the command-line tool in process; returns (exit_code, stdout, stderr).");
}
