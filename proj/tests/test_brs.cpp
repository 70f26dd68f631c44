// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include <gtest/gtest.h>

#include <vector>

#include "ncg/brs.hpp"
#include "ncg/errors.hpp"
#include "ncg/qft.hpp"

using namespace ncg;

namespace {

Mode mode(std::initializer_list<int> p) { return make_mode(std::vector<int>(p)); }

}  // namespace

TEST(Brs, RandomThreeModeFields) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 4; ++t) {
    auto th = Theta::blocks(3, {0.3 + 0.1 * t});
    auto f = random_brs_fields(th, 3, rng);
    auto r = brs_check(f, 0.7, 1.3);
    EXPECT_EQ(r.generators, 8);
    EXPECT_LT(r.s2_A, 1e-12);
    EXPECT_LT(r.s2_C, 1e-12);
    EXPECT_EQ(r.s2_Cbar, 0.0);
    EXPECT_LT(r.s_ym, 1e-10);
    EXPECT_LT(r.s_gf_fp, 1e-10);
    // The two gauge-fixing pieces cancel only together.
    EXPECT_GT(r.s_gf, 1e-6);
    EXPECT_NEAR(r.s_gf, r.s_fp, 1e-10 * std::max(1.0, r.s_gf));
  }
}

TEST(Brs, SingleModeGhostIsNilpotent) {
  auto th = Theta::blocks(3, {0.37});
  BrsFields f;
  f.generators = 4;
  for (int mu = 0; mu < 3; ++mu) f.A.push_back(GField(th, 4));
  f.C = GField(th, 4);
  f.C.add_term(mode({1, -1, 2}), GrassmannPoly::generator(4, 2, cplx(0.4, 0.3)));
  f.Cbar = GField(th, 4);
  f.Cbar.add_term(mode({0, 1, 0}), GrassmannPoly::generator(4, 3));
  f.B = GField(th, 4);
  auto s = brs_variation(f, 1.0);
  EXPECT_EQ(s.C.max_abs(), 0.0);
}

TEST(Brs, VariationOfGaugeField) {
  std::mt19937_64 rng(2);
  auto th = Theta::blocks(3, {0.21});
  auto f = random_brs_fields(th, 2, rng);
  const double g = 1.7;
  auto s = brs_variation(f, g);
  const int G = f.generators;
  for (int mu = 0; mu < 3; ++mu) {
    GField expect = GrassmannPoly::scalar(G, 1.0 / g) * gderive(f.C, mu) + (f.A[mu] * f.C - f.C * f.A[mu]);
    EXPECT_LT((s.A[mu] - expect).max_abs(), 1e-14);
  }
  EXPECT_EQ((s.Cbar - f.B).max_abs(), 0.0);
  EXPECT_EQ(s.B.max_abs(), 0.0);
}

TEST(Brs, CapacityAndValidation) {
  std::mt19937_64 rng(3);
  auto th = Theta::blocks(3, {0.3});
  EXPECT_NO_THROW(random_brs_fields(th, 11, rng));
  EXPECT_THROW(random_brs_fields(th, 12, rng), CapacityError);

  auto f = random_brs_fields(th, 2, rng);
  f.C.add_term(Mode{}, GrassmannPoly::generator(f.generators, 2));
  EXPECT_THROW(validate_brs_fields(f), InputError);

  auto h = random_brs_fields(th, 2, rng);
  h.A.pop_back();
  EXPECT_THROW(validate_brs_fields(h), DimensionError);
}

TEST(Brs, GhostVertexReproducesFaddeevPopov) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  auto th = Theta::blocks(3, {0.29});
  const int G = 4;
  const double g = 0.9;
  Mode q = mode({1, 0, -1}), r = mode({-1, 1, 0});
  const cplx c(0.7, -0.2), cb(-0.3, 0.5);
  BrsFields f;
  f.generators = G;
  std::vector<std::vector<std::pair<Mode, cplx>>> a(3);
  for (int mu = 0; mu < 3; ++mu) {
    GField x(th, G);
    for (const Mode& p : {Mode(-(q + r)), mode({0, 1, 1}), mode({2, -1, 0})}) {
      cplx v(nd(rng), nd(rng));
      x.add_term(p, GrassmannPoly::scalar(G, v));
      a[mu].push_back({p, v});
    }
    f.A.push_back(x);
  }
  f.C = GField(th, G);
  f.C.add_term(q, GrassmannPoly::generator(G, 2, c));
  f.Cbar = GField(th, G);
  f.Cbar.add_term(r, GrassmannPoly::generator(G, 3, cb));
  f.B = GField(th, G);

  GrassmannPoly cubic = brs_fp_action(f, g) - brs_fp_action(f, 0.0);
  cplx sum = 0.0;
  for (int mu = 0; mu < 3; ++mu)
    for (const auto& [p, v] : a[mu]) sum += ghost_vertex(p, q, r, mu, g, *th) * v;
  GrassmannPoly expect =
      sum * gr_mul(GrassmannPoly::generator(G, 3, cb), GrassmannPoly::generator(G, 2, c));
  EXPECT_GT(std::abs(sum), 1e-3);
  EXPECT_LT((cubic - expect).max_abs(), 1e-12);
}
