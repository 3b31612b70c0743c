#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbessel/fractional.hpp"
#include "pbessel/lattice.hpp"
#include "pbessel/router.hpp"

namespace py = pybind11;
using namespace pbessel;

namespace {

PExponent exponent(const py::object& p) {
  if (py::isinstance<PExponent>(p)) return p.cast<PExponent>();
  if (py::isinstance<py::str>(p)) return PExponent::parse(p.cast<std::string>());
  if (py::isinstance<py::int_>(p)) return PExponent::parse(std::to_string(p.cast<int>()));
  throw py::type_error("p must be a PExponent, a rational string like '2/3', or an int");
}

template <class T>
py::dict result_dict(const ValueWithError<T>& v) {
  py::dict d;
  d["value"] = v.value;
  d["err"] = v.err_estimate;
  d["method"] = std::string(method_name(v.method));
  d["reliable"] = v.reliable;
  return d;
}

py::dict residual_dict(const Residual& r) {
  py::dict d;
  d["residual"] = r.residual;
  d["scale"] = r.scale;
  d["relative"] = r.relative();
  d["reliable"] = r.reliable;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pbessel, m) {
  m.doc() = "p-Bessel functions, Erdelyi-Kober identities and p-circle lattice sums";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedRepresentation>(m, "UnsupportedRepresentation", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<PExponent>(m, "PExponent")
      .def_static("from_q", &PExponent::from_q)
      .def_static("parse", &PExponent::parse)
      .def_property_readonly("q", &PExponent::q)
      .def_property_readonly("p", &PExponent::p)
      .def("__str__", &PExponent::to_string)
      .def("__repr__", [](const PExponent& p) { return "PExponent('" + p.to_string() + "')"; });

  m.def(
      "pbessel",
      [](const py::object& p, double omega, double phi, double r, const std::string& method, double tol) {
        const auto pe = exponent(p);
        return result_dict(evaluate(pe, omega, DistortedAngle(pe, phi), r, parse_method_choice(method), tol));
      },
      py::arg("p"), py::arg("omega"), py::arg("phi"), py::arg("r"), py::arg("method") = "auto",
      py::arg("tol") = 1e-10);

  m.def(
      "pbessel_complex",
      [](const py::object& p, double omega, double phi, std::complex<double> z, const std::string& method,
         double tol) {
        const auto pe = exponent(p);
        return result_dict(
            evaluate_complex(pe, omega, DistortedAngle(pe, phi), z, parse_method_choice(method), tol));
      },
      py::arg("p"), py::arg("omega"), py::arg("phi"), py::arg("z"), py::arg("method") = "auto",
      py::arg("tol") = 1e-10);

  m.def(
      "p_cosine",
      [](const py::object& p, double phi, std::complex<double> z) {
        const auto pe = exponent(p);
        return result_dict(p_cosine(pe, DistortedAngle(pe, phi), z));
      },
      py::arg("p"), py::arg("phi"), py::arg("z"));
  m.def(
      "p_sine",
      [](const py::object& p, double phi, std::complex<double> z) {
        const auto pe = exponent(p);
        return result_dict(p_sine(pe, DistortedAngle(pe, phi), z));
      },
      py::arg("p"), py::arg("phi"), py::arg("z"));

  m.def("bessel_j", &classical_bessel_j, py::arg("omega"), py::arg("r"));

  m.def(
      "verify_ek_derivative",
      [](const py::object& p, double omega, double gamma, double phi, double r) {
        const auto pe = exponent(p);
        return residual_dict(verify_ek_derivative_identity(pe, omega, gamma, DistortedAngle(pe, phi), r));
      },
      py::arg("p"), py::arg("omega"), py::arg("gamma"), py::arg("phi"), py::arg("r"));
  m.def(
      "verify_ek_integral",
      [](const py::object& p, double omega, double gamma, double phi, double r) {
        const auto pe = exponent(p);
        return residual_dict(verify_ek_integral_identity(pe, omega, gamma, DistortedAngle(pe, phi), r));
      },
      py::arg("p"), py::arg("omega"), py::arg("gamma"), py::arg("phi"), py::arg("r"));
  m.def(
      "verify_fractional_ode",
      [](const py::object& p, double omega, double phi, double r) {
        const auto pe = exponent(p);
        return residual_dict(verify_fractional_ode(pe, omega, DistortedAngle(pe, phi), r));
      },
      py::arg("p"), py::arg("omega"), py::arg("phi"), py::arg("r"));

  m.def(
      "count_lattice_points",
      [](const py::object& p, double r) {
        const auto rep = count_lattice_points(exponent(p), r);
        py::dict d;
        d["count"] = rep.count;
        d["area"] = rep.area_term;
        d["discrepancy"] = rep.discrepancy;
        py::list pts;
        for (const auto& b : rep.boundary_points) pts.append(py::make_tuple(b.n1, b.n2));
        d["boundary_points"] = pts;
        return d;
      },
      py::arg("p"), py::arg("r"));
  m.def(
      "area_term", [](const py::object& p, double r) { return area_term(exponent(p), r); }, py::arg("p"),
      py::arg("r"));
  m.def(
      "angles_on_circle",
      [](const py::object& p, double s) {
        py::list out;
        for (const auto& e : angles_on_circle(exponent(p), s).entries)
          out.append(py::make_tuple(e.phi, py::make_tuple(e.point.n1, e.point.n2)));
        return out;
      },
      py::arg("p"), py::arg("s"));
  m.def(
      "r_function", [](std::int64_t k_max) { return r_function(k_max).values; }, py::arg("k_max"));
  m.def("hardy_partial_sum_p2", &hardy_partial_sum_p2, py::arg("r"), py::arg("K"));
  m.def(
      "hardy_partial_sum",
      [](const py::object& p, double r, double S) {
        const auto h = hardy_partial_sum_general(exponent(p), r, S);
        py::dict d;
        d["value"] = h.value;
        d["err"] = h.err_estimate;
        d["reliable"] = h.reliable;
        d["lattice_points"] = h.lattice_points;
        return d;
      },
      py::arg("p"), py::arg("r"), py::arg("S"));
}
