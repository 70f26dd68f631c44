// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors
//
// Thin binding layer. Reports cross the boundary as JSON text and are decoded
// on the Python side.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncg/distance.hpp"
#include "ncg/errors.hpp"
#include "ncg/io.hpp"
#include "ncg/model.hpp"
#include "ncg/qft.hpp"
#include "ncg/torus.hpp"

namespace py = pybind11;
using namespace ncg;

namespace {

std::string validate_text(const std::string& text) {
  return axiom_report_to_json(validate_axioms(triple_from_json(parse_json(text)))).dump();
}

std::string distance_text(const std::string& text, std::optional<int> i, std::optional<int> j) {
  DistanceProblem p = distance_from_json(parse_json(text));
  const int a = i ? *i - 1 : p.i, b = j ? *j - 1 : p.j;
  return distance_result_to_json(distance_numeric(p, a, b), a, b).dump();
}

std::string model_text(const std::string& text) {
  ModelProblem m = model_from_json(parse_json(text));
  return model_report_to_json(build_model_report(m.triple, m.constants, m.P)).dump();
}

py::dict powers_rieffel_dict(double lambda, int K) {
  auto pr = powers_rieffel(lambda, K);
  py::dict d;
  d["trace"] = pr.trace;
  d["defect"] = pr.defect;
  d["chern"] = pr.chern;
  return d;
}

Mode to_mode(const std::vector<int>& p) { return make_mode(p); }

}  // namespace

PYBIND11_MODULE(_ncg_forge, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ArithmeticError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DecompositionError>(m, "DecompositionError", PyExc_ArithmeticError);

  m.def("validate_json", &validate_text, py::arg("text"));
  m.def("distance_json", &distance_text, py::arg("text"), py::arg("i") = std::nullopt, py::arg("j") = std::nullopt);
  m.def("model_json", &model_text, py::arg("text"));

  m.def("distance_three_point", &distance_three_point, py::arg("delta12"), py::arg("delta13"), py::arg("delta23"));
  m.def("distance_chain4", &distance_chain4);
  m.def("chain_uniform", &chain_uniform, py::arg("n"), py::arg("L"));
  m.def(
      "distance_scalar",
      [](const RMatrix& delta, int i, int j) {
        auto r = distance_numeric(DistanceProblem::scalar(delta), i, j);
        return r.infinite ? kInfinity : r.value;
      },
      py::arg("delta"), py::arg("i"), py::arg("j"));

  m.def("standard_model_intersection_form", [](int right_neutrinos) {
    return intersection_form(standard_model_algebra(), standard_model_mu(right_neutrinos));
  }, py::arg("right_neutrinos") = 0);
  m.def("integer_determinant", &integer_determinant);

  m.def("powers_rieffel", &powers_rieffel_dict, py::arg("lam"), py::arg("K"));
  m.def(
      "gluon_propagator",
      [](const std::vector<int>& p, int mu, int nu, double alpha) { return gluon_propagator(to_mode(p), mu, nu, alpha); },
      py::arg("p"), py::arg("mu"), py::arg("nu"), py::arg("alpha") = 1.0);
  m.def(
      "vertex3",
      [](const std::vector<int>& p, const std::vector<int>& q, const std::vector<int>& r, int mu, int nu, int rho,
         double g, const RMatrix& theta) {
        return vertex3(to_mode(p), to_mode(q), to_mode(r), mu, nu, rho, g, *Theta::make(theta));
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("mu"), py::arg("nu"), py::arg("rho"), py::arg("g"),
      py::arg("theta"));
}
