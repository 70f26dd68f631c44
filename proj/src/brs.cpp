// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/brs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncg/errors.hpp"

namespace ncg {

// -------------------------------------------------------------- GField

GField::GField(ThetaPtr theta, int generators) : theta_(std::move(theta)), gens_(generators) {
  if (!theta_) throw InputError("GField: missing theta context");
}

void GField::add_term(const Mode& p, const GrassmannPoly& c) {
  if (c.is_zero()) return;
  if (c.generators() != gens_) throw InputError("GField: generator counts differ");
  auto [it, fresh] = terms_.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool GField::has_zero_mode() const { return terms_.count(Mode{}) > 0; }

double GField::max_abs() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, c.max_abs());
  return m;
}

GField& GField::operator+=(const GField& o) {
  if (!theta_) theta_ = o.theta_, gens_ = o.gens_;
  require_same_theta(theta_, o.theta_, "GField +");
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

GField& GField::operator-=(const GField& o) {
  if (!theta_) theta_ = o.theta_, gens_ = o.gens_;
  require_same_theta(theta_, o.theta_, "GField -");
  for (const auto& [p, c] : o.terms_) add_term(p, cplx(-1.0) * c);
  return *this;
}

GField operator*(const GField& a, const GField& b) {
  require_same_theta(a.theta(), b.theta(), "GField *");
  GField out(a.theta(), a.generators());
  for (const auto& [p, x] : a.terms())
    for (const auto& [q, y] : b.terms()) out.add_term(p + q, a.theta()->phase(p, q) * (x * y));
  return out;
}

GField operator*(const GrassmannPoly& c, const GField& a) {
  GField out(a.theta(), a.generators());
  for (const auto& [p, x] : a.terms()) out.add_term(p, c * x);
  return out;
}

GField operator+(GField a, const GField& b) { return a += b; }
GField operator-(GField a, const GField& b) { return a -= b; }

GField gderive(const GField& a, int mu) {
  if (mu < 0 || mu >= a.theta()->n()) throw InputError("gderive: direction out of range");
  GField out(a.theta(), a.generators());
  for (const auto& [p, x] : a.terms())
    if (p[mu] != 0) out.add_term(p, cplx(0.0, 2.0 * kPi * p[mu]) * x);
  return out;
}

GField gcomm(const GField& a, const GField& b) { return a * b - b * a; }

GrassmannPoly gtrace(const GField& a) {
  auto it = a.terms().find(Mode{});
  return it == a.terms().end() ? GrassmannPoly(a.generators()) : it->second;
}

// ------------------------------------------------------------------ BRS

void validate_brs_fields(const BrsFields& f) {
  if (!f.C.theta()) throw InputError("brs: ghost field has no theta context");
  const auto& th = f.C.theta();
  if (static_cast<int>(f.A.size()) != th->n())
    throw DimensionError("brs: need one gauge component per torus direction");
  for (const auto& a : f.A) require_same_theta(th, a.theta(), "brs");
  require_same_theta(th, f.Cbar.theta(), "brs");
  require_same_theta(th, f.B.theta(), "brs");
  if (f.C.has_zero_mode() || f.Cbar.has_zero_mode())
    throw InputError("brs: ghost fields carry no zero mode");
}

BrsFields brs_variation(const BrsFields& f, double g) {
  if (g == 0.0) throw InputError("brs: coupling must be nonzero");
  const int G = f.generators;
  BrsFields s;
  s.generators = G;
  for (size_t mu = 0; mu < f.A.size(); ++mu)
    s.A.push_back(GrassmannPoly::scalar(G, 1.0 / g) * gderive(f.C, static_cast<int>(mu)) + gcomm(f.A[mu], f.C));
  s.C = GrassmannPoly::scalar(G, -1.0) * (f.C * f.C);
  s.Cbar = f.B;
  s.B = GField(f.B.theta(), G);
  return s;
}

BrsFields brs_shift(const BrsFields& f, int k, double g) {
  BrsFields s = brs_variation(f, g);
  GrassmannPoly eta = GrassmannPoly::generator(f.generators, k);
  BrsFields out;
  out.generators = f.generators;
  for (size_t mu = 0; mu < f.A.size(); ++mu) out.A.push_back(f.A[mu] + eta * s.A[mu]);
  out.C = f.C + eta * s.C;
  out.Cbar = f.Cbar + eta * s.Cbar;
  out.B = f.B;
  return out;
}

GField brs_apply(const BrsFunctional& F, const BrsFields& f, int k, double g) {
  GField shifted = F(brs_shift(f, k, g));
  GField out(shifted.theta(), shifted.generators());
  for (const auto& [p, c] : shifted.terms()) out.add_term(p, c.left_coefficient(k));
  return out;
}

GrassmannPoly brs_apply(const BrsScalar& S, const BrsFields& f, int k, double g) {
  return S(brs_shift(f, k, g)).left_coefficient(k);
}

GrassmannPoly brs_ym_action(const BrsFields& f, double g) {
  const int n = static_cast<int>(f.A.size()), G = f.generators;
  GrassmannPoly s(G);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      GField F = gderive(f.A[nu], mu) - gderive(f.A[mu], nu) +
                 GrassmannPoly::scalar(G, g) * gcomm(f.A[mu], f.A[nu]);
      // F_{mu nu} F_{mu nu} + F_{nu mu} F_{nu mu}
      s += cplx(-0.5) * gtrace(F * F);
    }
  return s;
}

GrassmannPoly brs_gf_action(const BrsFields& f, double g, double alpha) {
  GrassmannPoly s = cplx(alpha * g * g / 2.0) * gtrace(f.B * f.B);
  for (size_t mu = 0; mu < f.A.size(); ++mu)
    s += cplx(g) * gtrace(gderive(f.B, static_cast<int>(mu)) * f.A[mu]);
  return s;
}

GrassmannPoly brs_fp_action(const BrsFields& f, double g) {
  const int G = f.generators;
  GrassmannPoly s(G);
  for (size_t mu = 0; mu < f.A.size(); ++mu) {
    int m = static_cast<int>(mu);
    GField inner = gderive(f.C, m) + GrassmannPoly::scalar(G, g) * gcomm(f.A[mu], f.C);
    s += gtrace(f.Cbar * gderive(inner, m));
  }
  return s;
}

BrsReport brs_check(const BrsFields& f, double g, double alpha) {
  validate_brs_fields(f);
  BrsReport r;
  r.generators = f.generators;
  // s^2 through two independent eta generators, eta_1 outside eta_0.
  auto s2 = [&](const BrsFunctional& F) {
    BrsFunctional sF = [&](const BrsFields& x) { return brs_apply(F, x, 0, g); };
    return brs_apply(sF, f, 1, g).max_abs();
  };
  for (size_t mu = 0; mu < f.A.size(); ++mu)
    r.s2_A = std::max(r.s2_A, s2([mu](const BrsFields& x) { return x.A[mu]; }));
  r.s2_C = s2([](const BrsFields& x) { return x.C; });
  r.s2_Cbar = s2([](const BrsFields& x) { return x.Cbar; });
  auto ym = [&](const BrsFields& x) { return brs_ym_action(x, g); };
  auto gf = [&](const BrsFields& x) { return brs_gf_action(x, g, alpha); };
  auto fp = [&](const BrsFields& x) { return brs_fp_action(x, g); };
  r.s_ym = brs_apply(BrsScalar(ym), f, 0, g).max_abs();
  r.s_gf = brs_apply(BrsScalar(gf), f, 0, g).max_abs();
  r.s_fp = brs_apply(BrsScalar(fp), f, 0, g).max_abs();
  BrsScalar total = [&](const BrsFields& x) { return gf(x) + fp(x); };
  r.s_gf_fp = brs_apply(total, f, 0, g).max_abs();
  return r;
}

BrsFields random_brs_fields(ThetaPtr theta, int modes, std::mt19937_64& rng, double scale) {
  if (modes < 1) throw InputError("brs: need at least one mode");
  const int n = theta->n();
  std::uniform_int_distribution<int> ud(-1, 1);
  std::normal_distribution<double> nd(0.0, scale);
  auto rand_mode = [&](bool nonzero) {
    Mode p{};
    do
      for (int i = 0; i < n; ++i) p[i] = ud(rng);
    while (nonzero && is_zero_mode(p));
    return p;
  };
  auto rc = [&]() { return cplx(nd(rng), nd(rng)); };
  if (2 + 2 * modes > GrassmannPoly::kMaxGenerators)
    throw CapacityError("brs: " + std::to_string(modes) + " ghost modes exhaust the " +
                        std::to_string(GrassmannPoly::kMaxGenerators) + " Grassmann generators");
  const int G = 2 + 2 * modes;
  // Ghosts sit on a pool S of modes, antighosts and B on -S, and A on the
  // differences S_k - S_{k+1}, so every coupling of the action is populated.
  std::vector<Mode> S;
  for (int k = 0; k < modes; ++k) S.push_back(rand_mode(true));
  int next = 2;
  BrsFields f;
  f.generators = G;
  for (int mu = 0; mu < n; ++mu) {
    GField a(theta, G);
    for (int k = 0; k < modes; ++k) a.add_term(S[k] + (-S[(k + 1) % modes]), GrassmannPoly::scalar(G, rc()));
    a.add_term(rand_mode(false), GrassmannPoly::scalar(G, rc()));
    f.A.push_back(a);
  }
  auto ghost = [&](int sign) {
    GField c(theta, G);
    for (int k = 0; k < modes; ++k)
      c.add_term(sign > 0 ? S[k] : Mode(-S[k]), GrassmannPoly::generator(G, next++, rc()));
    return c;
  };
  f.C = ghost(1);
  f.Cbar = ghost(-1);
  f.B = GField(theta, G);
  for (int k = 0; k < modes; ++k) f.B.add_term(-S[k], GrassmannPoly::scalar(G, rc()));
  return f;
}

}  // namespace ncg
