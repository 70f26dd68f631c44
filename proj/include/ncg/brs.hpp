// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "ncg/torus.hpp"

namespace ncg {

// Torus element with Grassmann coefficients, sum_p X_p U^p.
class GField {
 public:
  GField() = default;
  GField(ThetaPtr theta, int generators);

  const ThetaPtr& theta() const { return theta_; }
  int generators() const { return gens_; }
  const std::map<Mode, GrassmannPoly>& terms() const { return terms_; }
  void add_term(const Mode& p, const GrassmannPoly& c);
  bool has_zero_mode() const;
  double max_abs() const;

  GField& operator+=(const GField& o);
  GField& operator-=(const GField& o);

 private:
  ThetaPtr theta_;
  int gens_ = 0;
  std::map<Mode, GrassmannPoly> terms_;
};

GField operator*(const GField& a, const GField& b);
GField operator*(const GrassmannPoly& c, const GField& a);  // c placed on the left
GField operator+(GField a, const GField& b);
GField operator-(GField a, const GField& b);
GField gderive(const GField& a, int mu);
GField gcomm(const GField& a, const GField& b);
GrassmannPoly gtrace(const GField& a);

// Gauge field A_mu, ghost C, antighost Cbar and auxiliary B.
struct BrsFields {
  std::vector<GField> A;
  GField C, Cbar, B;
  int generators = 2;  // size of the Grassmann algebra, 0 and 1 are reserved for eta
};

void validate_brs_fields(const BrsFields& f);

// s A = (1/g) dC + [A, C], s C = -C C, s Cbar = B, s B = 0.
BrsFields brs_variation(const BrsFields& f, double g);
// Fields shifted by eta_k s(field).
BrsFields brs_shift(const BrsFields& f, int k, double g);

using BrsFunctional = std::function<GField(const BrsFields&)>;
using BrsScalar = std::function<GrassmannPoly(const BrsFields&)>;
// s F evaluated through generator k: the eta_k coefficient of F(phi + eta_k s phi).
GField brs_apply(const BrsFunctional& F, const BrsFields& f, int k, double g);
GrassmannPoly brs_apply(const BrsScalar& S, const BrsFields& f, int k, double g);

// -(1/4) int F_{mu nu} F_{mu nu}
GrassmannPoly brs_ym_action(const BrsFields& f, double g);
// int (alpha g^2 / 2) B^2 + g d_mu B A_mu
GrassmannPoly brs_gf_action(const BrsFields& f, double g, double alpha);
// int Cbar d_mu (d_mu C + g [A_mu, C])
GrassmannPoly brs_fp_action(const BrsFields& f, double g);

struct BrsReport {
  double s2_A = 0.0, s2_C = 0.0, s2_Cbar = 0.0;
  double s_ym = 0.0;     // eta coefficient of s S_YM
  double s_gf = 0.0;     // s S_GF alone, nonzero in general
  double s_fp = 0.0;     // s S_FP alone
  double s_gf_fp = 0.0;  // eta coefficient of s (S_GF + S_FP)
  int generators = 0;
};

BrsReport brs_check(const BrsFields& f, double g, double alpha);

// Ghost modes S drawn at random; C on S and Cbar, B on -S, each ghost term
// with a fresh odd generator; A_mu on the differences of consecutive modes of S
// plus one random mode. Throws CapacityError when 2 + 2 modes
// generators exceed the algebra.
BrsFields random_brs_fields(ThetaPtr theta, int modes, std::mt19937_64& rng, double scale = 0.5);

}  // namespace ncg
