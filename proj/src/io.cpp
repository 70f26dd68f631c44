// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ncg/errors.hpp"

namespace ncg {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "non-finite number");
  return v;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

double number_or(const Json& j, const std::string& key, double dflt, const std::string& path) {
  return j.contains(key) ? number(j[key], path + "/" + key) : dflt;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, size_t i) { return path + "/" + std::to_string(i); }

template <class Matrix, class Elem>
Matrix matrix_from(const Json& j, const std::string& path, Elem elem) {
  array(j, path);
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  for (size_t r = 0; r < j.size(); ++r) {
    array(j[r], at(path, r));
    if (cols < 0) cols = static_cast<Eigen::Index>(j[r].size());
    if (static_cast<Eigen::Index>(j[r].size()) != cols) fail(at(path, r), "ragged matrix row");
  }
  Matrix m(rows, std::max<Eigen::Index>(cols, 0));
  for (size_t r = 0; r < j.size(); ++r)
    for (size_t c = 0; c < j[r].size(); ++c) m(r, c) = elem(j[r][c], at(at(path, r), c));
  return m;
}

Mode mode_from(const Json& j, int n, const std::string& path) {
  array(j, path);
  if (static_cast<int>(j.size()) != n) fail(path, "mode needs " + std::to_string(n) + " entries");
  Mode p{};
  for (int i = 0; i < n; ++i) p[i] = static_cast<int>(integer(j[i], at(path, i)));
  return p;
}

Json mode_to_json(const Mode& p, int n) { return Json(mode_vector(p, n)); }

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("/: ") + e.what());
  }
}

std::string problem_kind(const Json& j) {
  const Json& k = field(j, "kind", "");
  if (!k.is_string()) fail("/kind", "expected a string");
  std::string s = k.get<std::string>();
  if (s != "finite_triple" && s != "distance" && s != "model" && s != "torus")
    fail("/kind", "unknown kind '" + s + "'");
  return s;
}

Json cplx_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return number(j, path);
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
}

Json cmatrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cplx_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix cmatrix_from_json(const Json& j, const std::string& path) {
  return matrix_from<CMatrix>(j, path, cplx_from_json);
}

Json rmatrix_to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

RMatrix rmatrix_from_json(const Json& j, const std::string& path) {
  return matrix_from<RMatrix>(j, path, number);
}

Json imatrix_to_json(const IMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

IMatrix imatrix_from_json(const Json& j, const std::string& path) {
  return matrix_from<IMatrix>(j, path, integer);
}

// ---------------------------------------------------------------- triples

namespace {

CMatrix mass_matrix(const Json& sm, const std::string& key, const std::string& letter,
                    const std::optional<CMatrix>& ckm, const std::string& path) {
  if (sm.contains(key)) return cmatrix_from_json(sm[key], path + "/" + key);
  const Json& masses = field(sm, "masses", path);
  const Json& diag = array(field(masses, letter, path + "/masses"), path + "/masses/" + letter);
  if (diag.size() != 3) fail(path + "/masses/" + letter, "expected three masses");
  CMatrix m = CMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) m(i, i) = number(diag[i], at(path + "/masses/" + letter, i));
  if (letter == "d" && ckm) m = *ckm * m;
  return m;
}

FiniteTriple standard_model_from_json(const Json& sm, const std::string& path) {
  std::optional<CMatrix> ckm;
  if (sm.contains("ckm")) {
    const Json& a = array(sm["ckm"], path + "/ckm");
    if (a.size() != 4) fail(path + "/ckm", "expected [t12, t13, t23, delta]");
    ckm = ckm_matrix(number(a[0], path + "/ckm/0"), number(a[1], path + "/ckm/1"), number(a[2], path + "/ckm/2"),
                     number(a[3], path + "/ckm/3"));
  }
  StandardModelInput in;
  in.Me = mass_matrix(sm, "Me", "e", ckm, path);
  in.Mu = mass_matrix(sm, "Mu", "u", ckm, path);
  in.Md = mass_matrix(sm, "Md", "d", ckm, path);
  if (sm.contains("right_neutrinos"))
    in.right_neutrinos = static_cast<int>(integer(sm["right_neutrinos"], path + "/right_neutrinos"));
  if (sm.contains("leptoquark")) {
    const Json& lq = sm["leptoquark"];
    if (lq.is_boolean()) {
      in.leptoquark = lq.get<bool>();
      in.leptoquark_phi = CMatrix::Zero(3, 2);
      in.leptoquark_phi(0, 0) = 1.0;
      in.leptoquark_M = CMatrix::Identity(3, 3);
    } else {
      in.leptoquark = true;
      in.leptoquark_phi = cmatrix_from_json(field(lq, "phi", path + "/leptoquark"), path + "/leptoquark/phi");
      in.leptoquark_M = cmatrix_from_json(field(lq, "M", path + "/leptoquark"), path + "/leptoquark/M");
    }
  }
  return standard_model(in);
}

}  // namespace

FiniteTriple triple_from_json(const Json& j, const std::string& path) {
  if (j.contains("standard_model")) return standard_model_from_json(j["standard_model"], path + "/standard_model");
  FiniteTriple t;
  const std::string ap = path + "/algebra";
  const Json& alg = field(j, "algebra", path);
  const Json& summands = array(field(alg, "summands", ap), ap + "/summands");
  for (size_t s = 0; s < summands.size(); ++s) {
    const std::string sp = at(ap + "/summands", s);
    const Json& f = field(summands[s], "field", sp);
    if (!f.is_string() || f.get<std::string>().size() != 1) fail(sp + "/field", "expected R, C or H");
    Summand sm;
    try {
      sm.field = field_from_letter(f.get<std::string>()[0]);
    } catch (const InputError&) {
      fail(sp + "/field", "expected R, C or H");
    }
    sm.n = static_cast<int>(integer(field(summands[s], "n", sp), sp + "/n"));
    if (sm.n < 1) fail(sp + "/n", "matrix size must be positive");
    t.algebra.summands.push_back(sm);
  }
  if (alg.contains("reps")) {
    const Json& reps = array(alg["reps"], ap + "/reps");
    for (size_t r = 0; r < reps.size(); ++r) {
      const std::string rp = at(ap + "/reps", r);
      RepIndex ri;
      ri.summand = static_cast<int>(integer(field(reps[r], "summand", rp), rp + "/summand"));
      if (ri.summand < 0 || ri.summand >= static_cast<int>(t.algebra.summands.size()))
        fail(rp + "/summand", "summand index out of range");
      if (reps[r].contains("conjugate")) {
        if (!reps[r]["conjugate"].is_boolean()) fail(rp + "/conjugate", "expected a boolean");
        ri.conjugate = reps[r]["conjugate"].get<bool>();
      }
      t.algebra.reps.push_back(ri);
    }
  }
  t.mu.mu = imatrix_from_json(field(j, "mu", path), path + "/mu");
  if (t.mu.mu.rows() != t.mu.mu.cols()) fail(path + "/mu", "multiplicity matrix must be square");
  if (j.contains("particles")) {
    t.particles = imatrix_from_json(j["particles"], path + "/particles");
    if (t.particles->rows() != t.mu.mu.rows() || t.particles->cols() != t.mu.mu.cols())
      fail(path + "/particles", "size differs from mu");
  }
  try {
    validate_multiplicity(t.algebra, t.mu);
  } catch (const InputError& e) {
    fail(path + "/mu", e.what());
  }
  if (j.contains("dirac_blocks")) {
    const Json& blocks = array(j["dirac_blocks"], path + "/dirac_blocks");
    const int nr = t.mu.size();
    for (size_t b = 0; b < blocks.size(); ++b) {
      const std::string bp = at(path + "/dirac_blocks", b);
      BlockKey key;
      key.i = static_cast<int>(integer(field(blocks[b], "i", bp), bp + "/i"));
      key.k = static_cast<int>(integer(field(blocks[b], "k", bp), bp + "/k"));
      key.j = static_cast<int>(integer(field(blocks[b], "j", bp), bp + "/j"));
      for (int v : {key.i, key.k, key.j})
        if (v < 0 || v >= nr) fail(bp, "irrep index out of range");
      if (key.i >= key.k) fail(bp, "blocks are stored with i < k");
      t.dirac_blocks[key] = cmatrix_from_json(field(blocks[b], "matrix", bp), bp + "/matrix");
    }
  }
  return t;
}

Json triple_to_json(const FiniteTriple& t) {
  Json j;
  j["kind"] = "finite_triple";
  Json summands = Json::array();
  for (const auto& s : t.algebra.summands)
    summands.push_back({{"field", std::string(1, field_letter(s.field))}, {"n", s.n}});
  Json alg = {{"summands", summands}};
  if (!t.algebra.reps.empty()) {
    Json reps = Json::array();
    for (const auto& r : t.algebra.reps) reps.push_back({{"summand", r.summand}, {"conjugate", r.conjugate}});
    alg["reps"] = reps;
  }
  j["algebra"] = alg;
  j["mu"] = imatrix_to_json(t.mu.mu);
  if (t.particles) j["particles"] = imatrix_to_json(*t.particles);
  Json blocks = Json::array();
  for (const auto& [k, m] : t.dirac_blocks)
    blocks.push_back({{"i", k.i}, {"k", k.k}, {"j", k.j}, {"matrix", cmatrix_to_json(m)}});
  j["dirac_blocks"] = blocks;
  return j;
}

// -------------------------------------------------------------- distances

DistanceProblem distance_from_json(const Json& j, const std::string& path) {
  DistanceProblem p;
  if (j.contains("delta")) {
    RMatrix d = rmatrix_from_json(j["delta"], path + "/delta");
    if (d.rows() != d.cols()) fail(path + "/delta", "matrix must be square");
    try {
      p = DistanceProblem::scalar(d);
    } catch (const InputError& e) {
      fail(path + "/delta", e.what());
    }
  } else {
    const Json& dims = array(field(j, "dims", path), path + "/dims");
    for (size_t a = 0; a < dims.size(); ++a) {
      long long v = integer(dims[a], at(path + "/dims", a));
      if (v < 1) fail(at(path + "/dims", a), "point dimension must be positive");
      p.dims.push_back(static_cast<int>(v));
    }
    if (p.dims.size() < 2) fail(path + "/dims", "need at least two points");
    if (j.contains("blocks")) {
      const Json& blocks = array(j["blocks"], path + "/blocks");
      for (size_t b = 0; b < blocks.size(); ++b) {
        const std::string bp = at(path + "/blocks", b);
        int a1 = static_cast<int>(integer(field(blocks[b], "a", bp), bp + "/a")) - 1;
        int b1 = static_cast<int>(integer(field(blocks[b], "b", bp), bp + "/b")) - 1;
        if (a1 < 0 || b1 < 0 || a1 >= p.points() || b1 >= p.points() || a1 == b1)
          fail(bp, "point labels must be distinct and lie in 1..N");
        try {
          p.set_block(a1, b1, cmatrix_from_json(field(blocks[b], "matrix", bp), bp + "/matrix"));
        } catch (const InputError& e) {
          fail(bp + "/matrix", e.what());
        }
      }
    }
  }
  p.i = 0;
  p.j = p.points() - 1;
  if (j.contains("i")) p.i = static_cast<int>(integer(j["i"], path + "/i")) - 1;
  if (j.contains("j")) p.j = static_cast<int>(integer(j["j"], path + "/j")) - 1;
  if (p.i < 0 || p.i >= p.points() || p.j < 0 || p.j >= p.points())
    fail(path, "point labels must lie in 1.." + std::to_string(p.points()));
  return p;
}

Json distance_to_json(const DistanceProblem& p) {
  Json j;
  j["kind"] = "distance";
  j["dims"] = p.dims;
  Json blocks = Json::array();
  for (const auto& [ab, m] : p.blocks)
    blocks.push_back({{"a", ab.first + 1}, {"b", ab.second + 1}, {"matrix", cmatrix_to_json(m)}});
  j["blocks"] = blocks;
  j["i"] = p.i + 1;
  j["j"] = p.j + 1;
  return j;
}

// ------------------------------------------------------------------ model

ModelProblem model_from_json(const Json& j) {
  ModelProblem m;
  m.triple = triple_from_json(field(j, "triple", ""), "/triple");
  Json c = j.contains("constants") ? j["constants"] : Json::object();
  if (!c.is_object()) fail("/constants", "expected an object");
  const std::string cp = "/constants";
  int n = c.contains("n") ? static_cast<int>(integer(c["n"], cp + "/n")) : 4;
  m.constants = spectral_constants(number_or(c, "F0", 0.0, cp), number_or(c, "F2", 1.0, cp),
                                   number_or(c, "F4", 1.0, cp), number_or(c, "Lambda", 1.0, cp),
                                   number_or(c, "tr1", 4.0, cp), n);
  if (j.contains("P")) m.P = rmatrix_from_json(j["P"], "/P");
  return m;
}

// ------------------------------------------------------------------ torus

Json ncpoly_to_json(const NCPoly& a) {
  Json terms = Json::array();
  for (const auto& [p, c] : a.terms()) terms.push_back({{"p", mode_to_json(p, a.n())}, {"coeff", cplx_to_json(c)}});
  return terms;
}

NCPoly ncpoly_from_json(const Json& j, const ThetaPtr& theta, const std::string& path) {
  NCPoly a(theta);
  array(j, path);
  for (size_t t = 0; t < j.size(); ++t) {
    const std::string tp = at(path, t);
    a.add_term(mode_from(field(j[t], "p", tp), theta->n(), tp + "/p"),
               cplx_from_json(field(j[t], "coeff", tp), tp + "/coeff"));
  }
  return a;
}

Json matncpoly_to_json(const MatNCPoly& a) {
  if (a.size() == 1) return ncpoly_to_json(a(0, 0));
  Json rows = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < a.size(); ++k) row.push_back(ncpoly_to_json(a(i, k)));
    rows.push_back(row);
  }
  return rows;
}

MatNCPoly matncpoly_from_json(const Json& j, const ThetaPtr& theta, int N, const std::string& path) {
  if (N == 1) return MatNCPoly::from_scalar(ncpoly_from_json(j, theta, path));
  array(j, path);
  if (static_cast<int>(j.size()) != N) fail(path, "expected " + std::to_string(N) + " rows");
  MatNCPoly m(theta, N);
  for (int i = 0; i < N; ++i) {
    array(j[i], at(path, i));
    if (static_cast<int>(j[i].size()) != N) fail(at(path, i), "expected " + std::to_string(N) + " entries");
    for (int k = 0; k < N; ++k) m(i, k) = ncpoly_from_json(j[i][k], theta, at(at(path, i), k));
  }
  return m;
}

TorusProblem torus_from_json(const Json& j) {
  TorusProblem t;
  try {
    t.theta = Theta::make(rmatrix_from_json(field(j, "theta", ""), "/theta"));
  } catch (const DimensionError& e) {
    fail("/theta", e.what());
  } catch (const InputError& e) {
    std::string w = e.what();
    if (w.rfind("/theta", 0) == 0) throw;
    fail("/theta", w);
  }
  if (j.contains("N")) t.N = static_cast<int>(integer(j["N"], "/N"));
  if (t.N < 1 || t.N > 8) fail("/N", "matrix size must lie in 1..8");
  t.g = number_or(j, "g", 1.0, "");
  t.k = number_or(j, "k", 1.0, "");
  t.alpha = number_or(j, "alpha", 1.0, "");
  if (j.contains("A")) {
    const Json& A = array(j["A"], "/A");
    if (static_cast<int>(A.size()) != t.theta->n()) fail("/A", "need one component per torus direction");
    for (size_t mu = 0; mu < A.size(); ++mu) {
      t.A.push_back(matncpoly_from_json(A[mu], t.theta, t.N, at("/A", mu)));
      if (antihermitian_defect(t.A.back()) > 1e-9) fail(at("/A", mu), "connection components must be antihermitian");
    }
  }
  if (j.contains("e")) t.e = matncpoly_from_json(j["e"], t.theta, t.N, "/e");
  if (j.contains("u")) t.u = matncpoly_from_json(j["u"], t.theta, t.N, "/u");
  if (j.contains("powers_rieffel")) {
    const Json& pr = j["powers_rieffel"];
    double lambda = number(field(pr, "lambda", "/powers_rieffel"), "/powers_rieffel/lambda");
    int K = pr.contains("K") ? static_cast<int>(integer(pr["K"], "/powers_rieffel/K")) : 64;
    t.powers_rieffel = std::make_pair(lambda, K);
  }
  if (j.contains("brs"))
    t.brs_modes = static_cast<int>(integer(field(j["brs"], "modes", "/brs"), "/brs/modes"));
  if (j.contains("feynman")) {
    const Json& ms = array(field(j["feynman"], "momenta", "/feynman"), "/feynman/momenta");
    for (size_t m = 0; m < ms.size(); ++m) t.momenta.push_back(mode_from(ms[m], t.theta->n(), at("/feynman/momenta", m)));
  }
  return t;
}

Json torus_to_json(const TorusProblem& t) {
  Json j;
  j["kind"] = "torus";
  j["theta"] = rmatrix_to_json(t.theta->matrix());
  j["N"] = t.N;
  j["g"] = t.g;
  j["k"] = t.k;
  j["alpha"] = t.alpha;
  if (!t.A.empty()) {
    Json A = Json::array();
    for (const auto& a : t.A) A.push_back(matncpoly_to_json(a));
    j["A"] = A;
  }
  if (t.e) j["e"] = matncpoly_to_json(*t.e);
  if (t.u) j["u"] = matncpoly_to_json(*t.u);
  if (t.powers_rieffel) j["powers_rieffel"] = {{"lambda", t.powers_rieffel->first}, {"K", t.powers_rieffel->second}};
  j["brs"] = {{"modes", t.brs_modes}};
  if (!t.momenta.empty()) {
    Json ms = Json::array();
    for (const auto& p : t.momenta) ms.push_back(mode_to_json(p, t.theta->n()));
    j["feynman"] = {{"momenta", ms}};
  }
  return j;
}

// ---------------------------------------------------------------- reports

Json axiom_report_to_json(const AxiomReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
  return {{"checks", checks},
          {"all_pass", r.all_pass()},
          {"s0_real", r.s0_real},
          {"s0_intrinsic", r.s0_intrinsic},
          {"s0_note", r.s0_note},
          {"intersection", imatrix_to_json(r.intersection)},
          {"poincare_determinant", r.poincare_determinant}};
}

Json distance_result_to_json(const DistanceResult& r, int i, int j) {
  Json out = {{"i", i + 1}, {"j", j + 1}, {"infinite", r.infinite}};
  out["value"] = r.infinite ? Json("inf") : Json(r.value);
  out["iterations"] = r.iterations;
  out["constraint"] = r.constraint;
  out["gap"] = r.gap;
  out["certificate"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  return out;
}

Json model_report_to_json(const ModelReport& r) {
  Json j;
  Json gauge = Json::array();
  for (const auto& g : r.gauge) gauge.push_back({{"summand", g.summand}, {"name", g.name}, {"abelian", g.abelian}});
  j["gauge"] = gauge;
  Json rows = Json::array();
  for (const auto& f : r.fermions.rows)
    rows.push_back({{"i", f.i}, {"j", f.j}, {"multiplicity", f.multiplicity}, {"chirality", f.chirality},
                    {"particle", f.particle}, {"dimension", f.dimension}});
  j["fermions"] = {{"rows", rows}, {"s0_real", r.fermions.s0_real}};
  Json couplings = Json::array();
  for (const auto& c : r.couplings) couplings.push_back({{"summand", c.summand}, {"row_sum", c.row_sum}, {"g", c.g}});
  j["couplings"] = couplings;
  j["abelian"] = {{"N", r.abelian.N}, {"N_prime", r.abelian.N_prime}, {"parameters", r.abelian.parameter_count}};
  if (r.abelian.lambda) j["abelian"]["lambda"] = *r.abelian.lambda;
  if (r.anomalies) {
    Json rigid = Json::array(), linear = Json::array();
    for (const auto& [i, v] : r.anomalies->rigid) rigid.push_back({i, v});
    for (const auto& [i, v] : r.anomalies->linear) linear.push_back({i, v});
    j["anomalies"] = {{"mixed_gravitational", r.anomalies->mixed_gravitational},
                      {"rigid", rigid},
                      {"linear", linear},
                      {"cubic", r.anomalies->cubic},
                      {"anomaly_free", r.anomalies->anomaly_free()}};
  }
  Json higgs = Json::array();
  for (const auto& h : r.higgs.fields)
    higgs.push_back({{"i", h.i}, {"j", h.j}, {"p", h.p}, {"rows", h.rows}, {"cols", h.cols},
                     {"type", higgs_type_name(h.type)}, {"derived", h.derived}});
  j["higgs"] = {{"fields", higgs}, {"law", r.higgs.law}, {"one_form_dimension", r.higgs.one_forms.dimension}};
  if (r.potential) {
    Json kappa = Json::object(), lambda = Json::object();
    for (const auto& [k, v] : r.potential->kappa) kappa[k] = cplx_to_json(v);
    for (const auto& [k, v] : r.potential->lambda) lambda[k] = cplx_to_json(v);
    j["potential"] = {{"mass_coefficient", r.potential->mass_coefficient},
                      {"lambda_norm", r.potential->lambda_norm},
                      {"kappa", kappa},
                      {"lambda", lambda}};
  }
  j["intersection"] = imatrix_to_json(r.intersection);
  j["intersection_det"] = r.intersection_det;
  const auto& c = r.constants;
  j["constants"] = {{"F0", c.F0}, {"F2", c.F2}, {"F4", c.F4}, {"Lambda", c.Lambda}, {"tr1", c.tr1}, {"n", c.n},
                    {"G", c.G}, {"Lambda_c", c.Lambda_c}, {"mu_scalar", c.mu_scalar},
                    {"lambda_norm", c.lambda_norm}, {"X", c.X}};
  if (r.mass_bound)
    j["mass_bound"] = {{"m_b", r.mass_bound->m_b}, {"m_f", r.mass_bound->m_f}, {"ratio", r.mass_bound->ratio},
                       {"holds", r.mass_bound->holds}};
  j["flags"] = r.flags;
  return j;
}

Json charge_report_to_json(const ChargeReport& r) {
  Json j = {{"c", rmatrix_to_json(r.c)}, {"trace", r.trace}, {"defect", r.defect}, {"error_bar", r.error_bar}};
  if (r.q) j["q"] = *r.q;
  return j;
}

Json brs_report_to_json(const BrsReport& r) {
  return {{"s2_A", r.s2_A},   {"s2_C", r.s2_C},   {"s2_Cbar", r.s2_Cbar},     {"s_ym", r.s_ym},
          {"s_gf", r.s_gf},   {"s_fp", r.s_fp},   {"s_gf_fp", r.s_gf_fp},     {"generators", r.generators}};
}

}  // namespace ncg
