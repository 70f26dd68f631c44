// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors
//
// ncg-forge: command-line front end for the ncg library.
// Exit codes: 0 success, 1 validation failure, 2 input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncg/brs.hpp"
#include "ncg/distance.hpp"
#include "ncg/errors.hpp"
#include "ncg/io.hpp"
#include "ncg/model.hpp"
#include "ncg/qft.hpp"
#include "ncg/torus.hpp"
#include "ncg/triple.hpp"

namespace {

using namespace ncg;

struct Options {
  double tol = kDefaultTol;
  unsigned long long seed = 1;
  bool json = false;
  std::string out;
};

struct Outcome {
  std::string text;
  Json machine;
  int code = 0;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt(cplx z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return "(" + fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i)";
}

std::string mode_str(const Mode& p, int n) {
  std::string s = "(";
  for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

void expect_kind(const Json& j, const std::string& want) {
  std::string k = problem_kind(j);
  if (k != want) throw InputError("/kind: expected '" + want + "', found '" + k + "'");
}

// ------------------------------------------------------------- validate

Outcome cmd_validate(const Json& j, const Options& o) {
  FiniteTriple t;
  std::string kind = problem_kind(j);
  if (kind == "model") {
    if (!j.contains("triple")) throw InputError("/triple: missing field");
    t = triple_from_json(j["triple"], "/triple");
  }
  else if (kind == "finite_triple")
    t = triple_from_json(j);
  else
    throw InputError("/kind: validate needs a finite_triple or model file");
  AxiomReport r = validate_axioms(t, o.tol);
  std::ostringstream s;
  s << "axiom suite (tol " << fmt(o.tol) << ")\n";
  for (const auto& c : r.checks)
    s << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  residual " << fmt(c.residual) << "\n";
  s << "poincare determinant " << r.poincare_determinant << "\n";
  s << "S0-reality " << (r.s0_real ? "yes" : "no") << " (intrinsic split " << (r.s0_intrinsic ? "exists" : "absent")
    << ")";
  if (!r.s0_note.empty()) s << ": " << r.s0_note;
  s << "\n" << (r.all_pass() ? "all axioms pass" : "axiom violation") << "\n";
  Outcome out;
  out.text = s.str();
  out.machine = {{"kind", "axiom_report"}, {"report", axiom_report_to_json(r)}, {"triple", triple_to_json(t)}};
  out.code = r.all_pass() ? 0 : 1;
  return out;
}

// ------------------------------------------------------------- distance

Outcome cmd_distance(const Json& j, int i, int k, const Options& o) {
  expect_kind(j, "distance");
  DistanceProblem p = distance_from_json(j);
  if (i < 1 || i > p.points() || k < 1 || k > p.points())
    throw InputError("point labels must lie in 1.." + std::to_string(p.points()));
  DistanceResult r = distance_numeric(p, i - 1, k - 1, o.tol);
  GeodesicBound gb = geodesic_bound(p, i - 1, k - 1);
  std::ostringstream s;
  s << "d(" << i << ", " << k << ") = " << (r.infinite ? std::string("inf") : fmt(r.value)) << "\n";
  if (!r.infinite) {
    s << "  constraint " << fmt(r.constraint) << ", gap " << fmt(r.gap) << ", newton steps " << r.iterations << "\n";
    s << "  certificate x =";
    for (Eigen::Index a = 0; a < r.x.size(); ++a) s << " " << fmt(r.x(a));
    s << "\n";
  }
  s << "  geodesic bound " << (gb.connected ? fmt(gb.length) : std::string("inf")) << "\n";
  Outcome out;
  out.text = s.str();
  out.machine = {{"kind", "distance_report"}, {"result", distance_result_to_json(r, i - 1, k - 1)}};
  out.machine["geodesic_bound"] = gb.connected ? Json(gb.length) : Json("inf");
  return out;
}

// ---------------------------------------------------------------- model

Outcome cmd_model(const Json& j, const Options&) {
  ModelProblem m;
  std::string kind = problem_kind(j);
  if (kind == "model") {
    m = model_from_json(j);
  } else if (kind == "finite_triple") {
    m.triple = triple_from_json(j);
    m.constants = spectral_constants(0.0, 1.0, 1.0, 1.0, 4.0, 4);
  } else {
    throw InputError("/kind: model needs a model or finite_triple file");
  }
  ModelReport r = build_model_report(m.triple, m.constants, m.P);
  std::ostringstream s;
  s << "gauge group " << gauge_group_string(m.triple.algebra) << "\n";
  s << "fermions (S0-real " << (r.fermions.s0_real ? "yes" : "no") << ")\n";
  for (const auto& f : r.fermions.rows)
    s << "  (" << f.i << "," << f.j << ") mult " << f.multiplicity << " chirality " << f.chirality << " particle "
      << f.particle << " dim " << f.dimension << "\n";
  s << "couplings\n";
  for (const auto& c : r.couplings)
    s << "  summand " << c.summand << " row sum " << c.row_sum << " g " << fmt(c.g) << "\n";
  s << "abelian sector N " << r.abelian.N << " N' " << r.abelian.N_prime << " free parameters "
    << r.abelian.parameter_count << "\n";
  if (r.anomalies)
    s << "anomalies " << (r.anomalies->anomaly_free() ? "cancel" : "do not cancel") << " (mixed "
      << fmt(r.anomalies->mixed_gravitational) << ", cubic " << fmt(r.anomalies->cubic) << ")\n";
  s << "higgs fields (" << r.higgs.law << ")\n";
  for (const auto& h : r.higgs.fields)
    s << "  Phi_" << h.i << h.j << "^" << h.p << " " << h.rows << "x" << h.cols << " " << higgs_type_name(h.type)
      << (h.derived ? " derived" : "") << "\n";
  if (r.potential) {
    s << "potential mass coefficient " << fmt(r.potential->mass_coefficient) << "\n";
    for (const auto& [k, v] : r.potential->kappa) s << "  kappa " << k << " = " << fmt(v) << "\n";
    for (const auto& [k, v] : r.potential->lambda) s << "  lambda " << k << " = " << fmt(v) << "\n";
  }
  s << "intersection form det " << r.intersection_det << "\n";
  const auto& c = r.constants;
  s << "constants G " << fmt(c.G) << " Lambda_c " << fmt(c.Lambda_c) << " mu " << fmt(c.mu_scalar) << " lambda "
    << fmt(c.lambda_norm) << " X " << fmt(c.X) << "\n";
  if (r.mass_bound)
    s << "mass bound m_b^2/m_f^2 = " << fmt(r.mass_bound->ratio) << (r.mass_bound->holds ? " (holds)" : " (VIOLATED)")
      << "\n";
  for (const auto& f : r.flags) s << "note: " << f << "\n";
  Outcome out;
  out.text = s.str();
  out.machine = {{"kind", "model_report"}, {"report", model_report_to_json(r)}};
  out.code = (r.mass_bound && !r.mass_bound->holds) ? 1 : 0;
  return out;
}

// ---------------------------------------------------------------- torus

Connection connection_or_zero(const TorusProblem& t) {
  if (!t.A.empty()) return t.A;
  return Connection(t.theta->n(), MatNCPoly(t.theta, t.N));
}

Outcome torus_ym(const TorusProblem& t, const Options& o) {
  Connection A = connection_or_zero(t);
  const double S = ym_action(A, t.e, t.g);
  double eom = 0.0;
  for (const auto& r : eom_residual(A, t.e, t.g)) eom = std::max(eom, r.max_abs());
  const double bianchi = bianchi_residual(A, t.e, t.g);
  std::ostringstream s;
  s << "S_YM = " << fmt(S) << "\n  equation of motion residual " << fmt(eom) << "\n  Bianchi residual "
    << fmt(bianchi) << "\n";
  Outcome out;
  out.machine = {{"kind", "ym_report"}, {"action", S}, {"eom_residual", eom}, {"bianchi_residual", bianchi}};
  if (t.u) {
    if (t.e) throw InputError("/u: gauge transformations act on the trivial module only (omit e)");
    const double Su = ym_action(gauge_transform(A, *t.u, t.g), std::nullopt, t.g);
    const double diff = std::abs(Su - S);
    s << "  S_YM[A^u] - S_YM[A] = " << fmt(Su - S) << "\n";
    out.machine["gauge_shift"] = Su - S;
    if (diff > o.tol * std::max(1.0, std::abs(S))) out.code = 1;
  }
  out.text = s.str();
  return out;
}

Outcome torus_cs(const TorusProblem& t, const Options& o) {
  if (t.theta->n() != 3) throw InputError("/theta: Chern-Simons needs a 3 x 3 theta");
  Connection A = connection_or_zero(t);
  const double S = cs_action(A, t.k);
  std::ostringstream s;
  s << "S_CS = " << fmt(S) << "\n";
  Outcome out;
  out.machine = {{"kind", "cs_report"}, {"action", S}};
  if (t.u) {
    const double gamma = cs_gauge_defect(*t.u, t.k);
    const double Su = cs_action(gauge_transform(A, *t.u, 1.0), t.k);
    const double residual = std::abs(Su - S - gamma);
    s << "  defect Gamma[u] = " << fmt(gamma) << "\n  S_CS[A^u] - S_CS[A] = " << fmt(Su - S)
      << "\n  identity residual " << fmt(residual) << "\n";
    out.machine["defect"] = gamma;
    out.machine["shift"] = Su - S;
    out.machine["residual"] = residual;
    if (residual > o.tol * std::max({1.0, std::abs(S), std::abs(gamma)})) out.code = 1;
  }
  out.text = s.str();
  return out;
}

Outcome torus_charge(const TorusProblem& t, const Options&) {
  MatNCPoly e;
  if (t.e) {
    e = *t.e;
  } else if (t.powers_rieffel) {
    if (t.N != 1) throw InputError("/N: the Powers-Rieffel projector is a 1 x 1 field");
    e = MatNCPoly::from_scalar(
        powers_rieffel_embedded(t.theta, 0, 1, t.powers_rieffel->first, t.powers_rieffel->second));
  } else {
    throw InputError("/e: charge needs a projector e or a powers_rieffel block");
  }
  ChargeReport r = topological_charge(e);
  std::ostringstream s;
  s << "int tr e = " << fmt(r.trace) << "\n  projector defect " << fmt(r.defect) << "\n  first Chern table\n";
  for (Eigen::Index a = 0; a < r.c.rows(); ++a) {
    s << "   ";
    for (Eigen::Index b = 0; b < r.c.cols(); ++b) s << " " << fmt(r.c(a, b));
    s << "\n";
  }
  if (r.q) s << "  second pairing q = " << fmt(*r.q) << "\n";
  s << "  error bar " << fmt(r.error_bar) << "\n";
  Outcome out;
  out.text = s.str();
  out.machine = {{"kind", "charge_report"}, {"report", charge_report_to_json(r)}};
  return out;
}

Outcome torus_brs(const TorusProblem& t, const Options& o) {
  std::mt19937_64 rng(o.seed);
  BrsFields f = random_brs_fields(t.theta, t.brs_modes, rng);
  BrsReport r = brs_check(f, t.g, t.alpha);
  std::ostringstream s;
  s << "BRS check, " << t.brs_modes << " modes per field, " << r.generators << " Grassmann generators\n"
    << "  s^2 A " << fmt(r.s2_A) << "\n  s^2 C " << fmt(r.s2_C) << "\n  s^2 Cbar " << fmt(r.s2_Cbar) << "\n"
    << "  s S_YM " << fmt(r.s_ym) << "\n  s S_GF " << fmt(r.s_gf) << "\n  s S_FP " << fmt(r.s_fp) << "\n"
    << "  s (S_GF + S_FP) " << fmt(r.s_gf_fp) << "\n";
  Outcome out;
  out.text = s.str();
  out.machine = {{"kind", "brs_report"}, {"seed", o.seed}, {"report", brs_report_to_json(r)}};
  const double worst = std::max({r.s2_A, r.s2_C, r.s_ym, r.s_gf_fp});
  if (worst > o.tol) out.code = 1;
  return out;
}

Outcome torus_feynman(const TorusProblem& t, const Options&) {
  const int n = t.theta->n();
  std::vector<Mode> ps = t.momenta;
  if (ps.empty())
    for (int mu = 0; mu < n; ++mu) {
      Mode p{};
      p[mu] = 1;
      ps.push_back(p);
    }
  std::ostringstream s;
  Json props = Json::array(), v3 = Json::array(), gh = Json::array(), v4 = Json::array();
  s << "propagators (alpha " << fmt(t.alpha) << ")\n";
  for (const auto& p : ps) {
    if (is_zero_mode(p)) continue;
    RMatrix P = gluon_propagator_matrix(p, n, t.alpha);
    s << "  p = " << mode_str(p, n) << " ghost " << fmt(ghost_propagator(p)) << " gluon diag";
    for (int mu = 0; mu < n; ++mu) s << " " << fmt(P(mu, mu));
    s << "\n";
    props.push_back({{"p", mode_vector(p, n)}, {"ghost", ghost_propagator(p)}, {"gluon", rmatrix_to_json(P)}});
  }
  s << "cubic vertices (g " << fmt(t.g) << ")\n";
  for (size_t a = 0; a < ps.size(); ++a)
    for (size_t b = a + 1; b < ps.size(); ++b) {
      const Mode &p = ps[a], &q = ps[b];
      Mode r = -(p + q);
      s << "  " << mode_str(p, n) << " " << mode_str(q, n) << " " << mode_str(r, n) << " sin "
        << fmt(t.theta->sin_phase(p, q)) << "\n";
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          for (int rho = 0; rho < n; ++rho) {
            double v = vertex3(p, q, r, mu, nu, rho, t.g, *t.theta);
            if (v == 0.0) continue;
            s << "    V3[" << mu << nu << rho << "] = " << fmt(v) << "\n";
            v3.push_back({{"p", mode_vector(p, n)}, {"q", mode_vector(q, n)}, {"r", mode_vector(r, n)},
                          {"idx", {mu, nu, rho}}, {"value", v}});
          }
      for (int mu = 0; mu < n; ++mu) {
        double v = ghost_vertex(p, q, r, mu, t.g, *t.theta);
        if (v == 0.0) continue;
        s << "    ghost[" << mu << "] = " << fmt(v) << "\n";
        gh.push_back({{"p", mode_vector(p, n)}, {"q", mode_vector(q, n)}, {"r", mode_vector(r, n)}, {"mu", mu},
                      {"value", v}});
      }
      std::array<Mode, 4> k{p, q, -p, -q};
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
          for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
              double v = vertex4(k, {i0, i1, i2, i3}, t.g, *t.theta);
              if (v == 0.0) continue;
              s << "    V4(p,q,-p,-q)[" << i0 << i1 << i2 << i3 << "] = " << fmt(v) << "\n";
              v4.push_back({{"p", mode_vector(p, n)}, {"q", mode_vector(q, n)}, {"idx", {i0, i1, i2, i3}},
                            {"value", v}});
            }
    }
  Outcome out;
  out.text = s.str();
  out.machine = {{"kind", "feynman_report"}, {"propagators", props}, {"vertex3", v3}, {"ghost_vertex", gh},
                 {"vertex4", v4}};
  return out;
}

Outcome cmd_torus(const Json& j, const std::string& action, const Options& o) {
  expect_kind(j, "torus");
  TorusProblem t = torus_from_json(j);
  if (action == "ym") return torus_ym(t, o);
  if (action == "cs") return torus_cs(t, o);
  if (action == "charge") return torus_charge(t, o);
  if (action == "brs") return torus_brs(t, o);
  return torus_feynman(t, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncg-forge: finite spectral triples and the noncommutative torus"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for all random draws");
  app.add_flag("--json", o.json, "Emit the machine-readable report");
  app.add_option("--out", o.out, "Write the report to a file");

  std::string file, action;
  int i = 0, k = 0;
  auto* validate = app.add_subcommand("validate", "Check the dimension-0 axioms of a finite triple");
  validate->add_option("file", file)->required();
  auto* distance = app.add_subcommand("distance", "Distance between two pure states (1-based labels)");
  distance->add_option("file", file)->required();
  distance->add_option("i", i)->required();
  distance->add_option("j", k)->required();
  auto* model = app.add_subcommand("model", "Extract the Yang-Mills-Higgs model of a finite triple");
  model->add_option("file", file)->required();
  auto* torus = app.add_subcommand("torus", "Noncommutative torus computations");
  torus->add_option("file", file)->required();
  torus->add_option("action", action)->required()->check(CLI::IsMember({"ym", "cs", "charge", "brs", "feynman"}));
  for (auto* sub : {validate, distance, model, torus}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Outcome out;
  try {
    Json j = read_json_file(file);
    if (*validate) out = cmd_validate(j, o);
    else if (*distance) out = cmd_distance(j, i, k, o);
    else if (*model) out = cmd_model(j, o);
    else out = cmd_torus(j, action, o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string payload = o.json ? out.machine.dump(2) + "\n" : out.text;
  if (o.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "input error: cannot write " << o.out << "\n";
      return 2;
    }
    f << payload;
  }
  return out.code;
}
