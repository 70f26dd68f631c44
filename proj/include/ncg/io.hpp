// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncg/brs.hpp"
#include "ncg/distance.hpp"
#include "ncg/model.hpp"
#include "ncg/torus.hpp"
#include "ncg/triple.hpp"

namespace ncg {

using Json = nlohmann::ordered_json;

// Problem files are JSON with a top-level "kind". Complex numbers are [re, im]
// pairs, matrices are row arrays. Schema violations throw InputError whose
// message starts with the JSON path of the offending field.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);
std::string problem_kind(const Json& j);

Json cplx_to_json(cplx z);
cplx cplx_from_json(const Json& j, const std::string& path);
Json cmatrix_to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j, const std::string& path);
Json rmatrix_to_json(const RMatrix& m);
RMatrix rmatrix_from_json(const Json& j, const std::string& path);
Json imatrix_to_json(const IMatrix& m);
IMatrix imatrix_from_json(const Json& j, const std::string& path);

// finite_triple: {"algebra": {"summands": [{"field": "C", "n": 1}, ...],
// "reps": [{"summand": 0, "conjugate": false}, ...]}, "mu": [[...]],
// "particles": [[...]], "dirac_blocks": [{"i", "k", "j", "matrix"}]}
// or {"standard_model": {"masses": {"e", "u", "d"}, "ckm": [t12, t13, t23, delta],
// "right_neutrinos": 0, "leptoquark": false}}.
FiniteTriple triple_from_json(const Json& j, const std::string& path = "");
Json triple_to_json(const FiniteTriple& t);

// distance: {"dims": [...], "blocks": [{"a", "b", "matrix"}]} or {"delta": real
// symmetric matrix}; optional "i", "j" (1-based point labels).
DistanceProblem distance_from_json(const Json& j, const std::string& path = "");
Json distance_to_json(const DistanceProblem& p);

struct ModelProblem {
  FiniteTriple triple;
  SpectralConstants constants;
  std::optional<RMatrix> P;
};

// model: {"triple": {...}, "constants": {"F0", "F2", "F4", "Lambda", "tr1", "n"},
// "P": [[...]]}
ModelProblem model_from_json(const Json& j);

struct TorusProblem {
  ThetaPtr theta;
  int N = 1;
  double g = 1.0, k = 1.0, alpha = 1.0;
  Connection A;                    // empty means A = 0
  std::optional<MatNCPoly> e;      // projector
  std::optional<MatNCPoly> u;      // gauge transformation
  std::optional<std::pair<double, int>> powers_rieffel;  // (lambda, K)
  int brs_modes = 3;
  std::vector<Mode> momenta;       // external momenta for feynman tables
};

// torus: {"theta": [[...]], "N": 1, "g", "k", "alpha", "A": [field per mu],
// "e": field, "u": field, "powers_rieffel": {"lambda", "K"}, "brs": {"modes"},
// "feynman": {"momenta": [[...]]}}. A field is a term list [{"p": [...],
// "coeff": [re, im]}] when N = 1, or an N x N array of term lists.
TorusProblem torus_from_json(const Json& j);
Json torus_to_json(const TorusProblem& t);

Json ncpoly_to_json(const NCPoly& a);
NCPoly ncpoly_from_json(const Json& j, const ThetaPtr& theta, const std::string& path);
Json matncpoly_to_json(const MatNCPoly& a);
MatNCPoly matncpoly_from_json(const Json& j, const ThetaPtr& theta, int N, const std::string& path);

// Machine-readable report mirrors.
Json axiom_report_to_json(const AxiomReport& r);
Json distance_result_to_json(const DistanceResult& r, int i, int j);
Json model_report_to_json(const ModelReport& r);
Json charge_report_to_json(const ChargeReport& r);
Json brs_report_to_json(const BrsReport& r);

}  // namespace ncg
