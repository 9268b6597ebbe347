#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fockde/battery.hpp"
#include "fockde/cli.hpp"
#include "fockde/conditions.hpp"
#include "fockde/io.hpp"
#include "fockde/kernel.hpp"
#include "fockde/ode.hpp"

namespace py = pybind11;
using namespace fockde;

namespace {

// JSON crosses the boundary as text; the Python side wraps it in dicts.
QuadratureConfig quad_from(const std::string& text) {
  return text.empty() ? QuadratureConfig{} : quadrature_from_json(json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_fockde, m) {
  m.doc() = "Weighted Fock spaces, reproducing kernels and linear complex ODEs";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

  py::class_<WeightProfile>(m, "WeightProfile")
      .def_static("power", &WeightProfile::power, py::arg("alpha"))
      .def_static("exponential", &WeightProfile::exponential, py::arg("beta"))
      .def_static("double_exponential", &WeightProfile::double_exponential)
      .def_static("classical_gaussian", &WeightProfile::classical_gaussian)
      .def_static("scaled_exponential", &WeightProfile::scaled_exponential, py::arg("c"))
      .def_static("from_json", [](const std::string& text) { return weight_from_json(json::parse(text)); })
      .def("to_json", [](const WeightProfile& w) { return to_json(w).dump(); })
      .def("phi", &WeightProfile::phi)
      .def("phi_prime", &WeightProfile::phi_prime)
      .def("phi_second", &WeightProfile::phi_second)
      .def_property_readonly("label", &WeightProfile::label)
      .def("__repr__", [](const WeightProfile& w) { return "WeightProfile(" + w.label() + ")"; });

  m.def("laplacian_radial", &laplacian_radial, py::arg("weight"), py::arg("r"));
  m.def("tau", &tau, py::arg("weight"), py::arg("r"), py::arg("plateau"));
  m.def(
      "classify_weight",
      [](const WeightProfile& w, double r_max, int samples) { return to_json(classify_weight(w, r_max, samples)).dump(); },
      py::arg("weight"), py::arg("r_max") = 100.0, py::arg("samples") = 64);

  py::class_<EntireFunction>(m, "EntireFunction")
      .def_static("from_json", [](const std::string& text) { return function_from_json(json::parse(text)); })
      .def_static("polynomial", &EntireFunction::polynomial, py::arg("coeffs"))
      .def("to_json", [](const EntireFunction& f) { return to_json(f).dump(); })
      .def("__call__", [](const EntireFunction& f, cplx z) { return f(z); })
      .def("derivative", [](const EntireFunction& f, int order) { return differentiate(f, order); },
           py::arg("order") = 1)
      .def("antiderivative", [](const EntireFunction& f, int order) { return antiderivative(f, order); },
           py::arg("order") = 1)
      .def("taylor_coefficients", &taylor_coefficients, py::arg("n"))
      .def("max_modulus", &max_modulus, py::arg("r"), py::arg("n_theta") = 256);

  m.def(
      "weighted_norm",
      [](const EntireFunction& f, const WeightProfile& w, double p, double q, int order, const std::string& quad) {
        SpaceSpec sp;
        sp.weight = w;
        sp.p = p;
        sp.q = q;
        sp.m = order;
        sp.validate();
        const Membership mem = membership_probe(f, sp, quad_from(quad));
        json j = to_json(mem.norm);
        j["in_space"] = mem.in_space;
        return j.dump();
      },
      py::arg("f"), py::arg("weight"), py::arg("p") = 2.0, py::arg("q") = 0.0, py::arg("m") = 0,
      py::arg("quadrature") = "");

  py::class_<KernelBasis>(m, "KernelBasis")
      .def(py::init([](const WeightProfile& w, int N) { return compute_deltas(w, N); }), py::arg("weight"),
           py::arg("N"))
      .def_readonly("N", &KernelBasis::N)
      .def_readonly("log_delta_sq", &KernelBasis::log_delta_sq)
      .def("delta_sq", &KernelBasis::delta_sq)
      .def("__call__", [](const KernelBasis& b, cplx z, cplx w) { return kernel_eval(b, z, w); });

  m.def(
      "reproduce_check",
      [](const KernelBasis& b, const EntireFunction& f, cplx w, const std::string& quad) {
        const auto r = reproduce_check(b, f, w, quad_from(quad));
        return py::make_tuple(r.reproduced, r.reference, r.rel_err, r.converged);
      },
      py::arg("basis"), py::arg("f"), py::arg("at"), py::arg("quadrature") = "");

  m.def(
      "taylor_solution",
      [](const std::string& problem, int N) { return taylor_solution_coefficients(problem_from_json(json::parse(problem)), N); },
      py::arg("problem"), py::arg("N"));

  m.def(
      "ray_values",
      [](const std::string& problem, double theta, std::vector<double> radii, double tol) {
        const RayTrace t = ray_integrate(problem_from_json(json::parse(problem)), theta, radii, tol);
        std::vector<cplx> f;
        for (const auto& v : t.values) f.push_back(v[0]);
        return py::make_tuple(f, t.blowup);
      },
      py::arg("problem"), py::arg("theta"), py::arg("radii"), py::arg("tol") = 1e-10);

  m.def(
      "sup_ratio",
      [](const EntireFunction& A, int s) {
        const SupRatio r = sup_ratio(A, s);
        return py::make_tuple(r.value, r.at_infinity, r.degree_flag);
      },
      py::arg("A"), py::arg("s"));

  m.def("battery_case_names", &battery_case_names);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
