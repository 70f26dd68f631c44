// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/model.hpp"
#include "ncg/triple.hpp"

using namespace ncg;

namespace {


AlgebraSpec complex_algebra(const std::vector<int>& sizes) {
  AlgebraSpec a;
  for (size_t s = 0; s < sizes.size(); ++s) {
    a.summands.push_back({Field::C, sizes[s]});
    a.reps.push_back({static_cast<int>(s), false});
  }
  return a;
}

StandardModelInput diagonal_sm(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.05, 4.0);
  StandardModelInput in;
  in.Me = CMatrix::Zero(3, 3);
  in.Mu = CMatrix::Zero(3, 3);
  in.Md = CMatrix::Zero(3, 3);
  for (int g = 0; g < 3; ++g) {
    in.Me(g, g) = U(rng);
    in.Mu(g, g) = U(rng);
    in.Md(g, g) = U(rng);
  }
  return in;
}

// Random triple over 2..4 complex summands of size 1 or 2 with random signed
// multiplicities and random Dirac blocks on every admissible link.
FiniteTriple random_small_triple(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, 4), size(1, 2), entry(-2, 2);
  for (;;) {
    const int n = count(rng);
    std::vector<int> sizes(n);
    for (auto& s : sizes) s = size(rng);
    FiniteTriple t;
    t.algebra = complex_algebra(sizes);
    t.mu.mu = IMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) t.mu.mu(i, j) = t.mu.mu(j, i) = entry(rng);
    bool rows_ok = true;
    for (int i = 0; i < n; ++i) rows_ok = rows_ok && t.mu.mu.row(i).cwiseAbs().sum() > 0;
    if (!rows_ok) continue;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          const long long a = t.mu(i, j), b = t.mu(k, j);
          if (a * b >= 0) continue;
          t.dirac_blocks[{i, k, j}] =
              random_matrix(rng, int(std::llabs(a)) * sizes[i], int(std::llabs(b)) * sizes[k]);
        }
    if (!t.dirac_blocks.empty()) return t;
  }
}

double sq(double x) { return x * x; }

}  // namespace

// ----------------------------------------------------------------- gauge group

TEST(GaugeGroup, FactorNames) {
  EXPECT_EQ(gauge_group_string(complex_algebra({1})), "U(1)");
  AlgebraSpec real2;
  real2.summands.push_back({Field::R, 2});
  auto g = gauge_group(real2);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].name, "O(2)");
  EXPECT_EQ(gauge_group_string(standard_model_algebra()), "U(1) x SU(2) x U(3)");
}

TEST(FermionTable, StandardModelCounts) {
  std::mt19937_64 rng(1);
  auto t = standard_model(diagonal_sm(rng));
  auto table = fermion_table(t);
  EXPECT_TRUE(table.s0_real);
  int particle = 0, anti = 0, rows = 0;
  for (const auto& r : table.rows) {
    EXPECT_EQ(r.chirality, t.mu(r.i, r.j) > 0 ? 1 : -1);
    EXPECT_EQ(r.multiplicity, std::llabs(t.mu(r.i, r.j)));
    (r.particle > 0 ? particle : anti) += r.dimension;
    if (r.particle > 0) rows += int(r.multiplicity);
  }
  EXPECT_EQ(particle, 45);
  EXPECT_EQ(anti, 45);
  // Fifteen Weyl fermions per generation in the particle half.
  EXPECT_EQ(particle / 3, 15);
  EXPECT_EQ(rows, 15);
}

TEST(FermionTable, SingleEntry) {
  FiniteTriple t;
  t.algebra = complex_algebra({1});
  t.mu.mu = IMatrix::Constant(1, 1, -2);
  auto table = fermion_table(t);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0].chirality, -1);
  EXPECT_EQ(table.rows[0].multiplicity, 2);
}

// ------------------------------------------------------------------ couplings

TEST(Couplings, StandardModelEquality) {
  auto c = coupling_constants(standard_model_algebra(), standard_model_mu(), 4, 1.0, 1.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].row_sum, 12);
  EXPECT_EQ(c[1].row_sum, 12);
  EXPECT_EQ(c[0].g, c[1].g);
  // (2 pi)^{n/4} sqrt(3/2 / (F4 Lambda^{n-4} sum)) at n = 4, sum = 12.
  EXPECT_NEAR(c[0].g, 2.0 * kPi * std::sqrt(1.5 / 12.0), 1e-14);
}

TEST(Couplings, DoublingMuAndScaling) {
  auto alg = standard_model_algebra();
  auto mu = standard_model_mu();
  auto mu2 = mu;
  mu2.mu *= 2;
  auto c = coupling_constants(alg, mu, 4, 1.3, 2.0);
  auto c2 = coupling_constants(alg, mu2, 4, 1.3, 2.0);
  auto c3 = coupling_constants(alg, mu, 4, 1.3, 7.0);
  auto c4 = coupling_constants(alg, mu, 4, 5.2, 2.0);
  for (size_t k = 0; k < c.size(); ++k) {
    EXPECT_NEAR(c2[k].g, c[k].g / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(c3[k].g, c[k].g, 1e-14);
    EXPECT_NEAR(c4[k].g, c[k].g / 2.0, 1e-14);
  }
}

// -------------------------------------------------------------- abelian sector

TEST(Abelian, StandardModel) {
  auto a = abelian_sector(standard_model_algebra(), standard_model_mu());
  EXPECT_EQ(a.N, 2);
  EXPECT_EQ(a.N_prime, 1);
  EXPECT_EQ(a.parameter_count, 1);
  EXPECT_TRUE(a.Q.isApprox(a.Q.transpose()));
  Eigen::SelfAdjointEigenSolver<RMatrix> es(a.Q);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(Abelian, DecoupledAndConstantKernel) {
  MultiplicityMatrix diag;
  diag.mu = IMatrix::Constant(1, 1, 1);
  auto a = abelian_sector(complex_algebra({1}), diag);
  EXPECT_EQ(a.Q(0, 0), 0.0);
  RMatrix P = RMatrix::Constant(1, 1, 1.0);
  EXPECT_THROW(abelian_sector(complex_algebra({1}), diag, P), InputError);

  MultiplicityMatrix full;
  full.mu = IMatrix::Constant(3, 3, 1);
  auto b = abelian_sector(complex_algebra({1, 2, 1}), full);
  ASSERT_EQ(b.kernel.cols(), 1);
  RVector k = b.kernel.col(0);
  EXPECT_NEAR(std::abs(k(0)), std::abs(k(1)), 1e-12);
  EXPECT_NEAR(std::abs(k(1)), std::abs(k(2)), 1e-12);
}

TEST(Abelian, UnimodularityMatrix) {
  RMatrix P(2, 1);
  P << 3.0, 1.0;
  auto a = abelian_sector(standard_model_algebra(), standard_model_mu(), P);
  ASSERT_TRUE(a.lambda.has_value());
  EXPECT_NEAR(*a.lambda, (P.transpose() * a.Q * P)(0, 0), 1e-12);
  EXPECT_LT(a.p_residual, 1e-12);
  EXPECT_EQ(a.parameter_count, 1);
}

// ------------------------------------------------------------------ anomalies

TEST(Anomalies, SymmetricEpsilonIsAnomalyFree) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> count(2, 5), size(1, 4), entry(0, 3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    const int n = count(rng);
    std::vector<int> sizes(n);
    for (auto& s : sizes) s = size(rng);
    IMatrix eps = IMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) eps(i, j) = eps(j, i) = entry(rng);
    RVector B(n);
    for (int i = 0; i < n; ++i) B(i) = nd(rng);
    auto r = anomaly_check(complex_algebra(sizes), eps, B);
    EXPECT_TRUE(r.anomaly_free(1e-12));
    EXPECT_TRUE(r.cubic_poly.empty());
    EXPECT_EQ(r.mixed_row.norm(), 0.0);
  }
}

TEST(Anomalies, StandardModelFixesTheHypercharge) {
  auto alg = standard_model_algebra();
  auto a = abelian_sector(alg, standard_model_mu());
  // Charge of the colour U(1) relative to the lepton U(1): only 1/3 cancels.
  for (double x : {-1.0, -1.0 / 3.0, 0.0, 0.5, 1.0}) {
    RMatrix P(2, 1);
    P << 1.0, x;
    auto r = anomaly_check(alg, standard_model_epsilon(), charges_from_P(a, P));
    EXPECT_FALSE(r.anomaly_free(1e-9)) << x;
  }
  RMatrix P(2, 1);
  P << 3.0, 1.0;
  auto r = anomaly_check(alg, standard_model_epsilon(), charges_from_P(a, P));
  EXPECT_TRUE(r.anomaly_free(1e-9));
}

TEST(Anomalies, RigidConditionIgnoresCharges) {
  // A colour-type irrep (d = 3) linked asymmetrically fails without charges.
  IMatrix eps = IMatrix::Zero(2, 2);
  eps(0, 1) = 1;
  auto r = anomaly_check(complex_algebra({3, 1}), eps);
  ASSERT_EQ(r.rigid.size(), 1u);
  EXPECT_NE(r.rigid[0].second, 0.0);
  EXPECT_FALSE(r.anomaly_free());
}

// ------------------------------------------------------------- spectral data

TEST(SpectralConstants, Examples) {
  auto c = spectral_constants(0.0, 0.5, 1.0, 1.0, 4.0, 4);
  EXPECT_NEAR(c.mu_scalar, 1.0, 1e-14);
  EXPECT_EQ(c.Lambda_c, 0.0);
  auto c2 = spectral_constants(0.0, 0.5, 1.0, 2.0, 4.0, 4);
  EXPECT_NEAR(sq(c2.mu_scalar), 4.0 * sq(c.mu_scalar), 1e-13);
  EXPECT_NEAR(c2.lambda_norm, c.lambda_norm, 1e-16);
  // X = (2 pi)^{n/2} / (4 Lambda^{n-4} F4)
  EXPECT_NEAR(c.X, sq(2.0 * kPi) / 4.0, 1e-12);
}

// ---------------------------------------------------------------------- Higgs

TEST(Higgs, StandardModelDoublet) {
  std::mt19937_64 rng(3);
  auto h = higgs_fields(standard_model(diagonal_sm(rng)));
  ASSERT_EQ(h.fields.size(), 2u);
  EXPECT_FALSE(h.fields[0].derived);
  EXPECT_EQ(h.fields[0].type, HiggsType::Complex);
  EXPECT_EQ(h.fields[0].rows * h.fields[0].cols, 2);
  EXPECT_TRUE(h.fields[1].derived);
  EXPECT_EQ(h.fields[1].source, 0);
}

TEST(Higgs, NoVerticalLinksNoFields) {
  FiniteTriple t;
  t.algebra = complex_algebra({1, 1});
  t.mu.mu = IMatrix(2, 2);
  t.mu.mu << 0, 1, 1, 0;
  EXPECT_TRUE(higgs_fields(t).fields.empty());
}

TEST(Higgs, NeverDiagonal) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    auto h = higgs_fields(random_small_triple(rng));
    for (const auto& f : h.fields) EXPECT_NE(f.i, f.j);
  }
}

TEST(Yukawa, ZeroAndVacuum) {
  std::mt19937_64 rng(5);
  auto t = standard_model(diagonal_sm(rng));
  auto h = higgs_fields(t);
  HiggsValues zero = vacuum_values(h);
  for (auto& z : zero) z.setZero();
  EXPECT_EQ(yukawa_operator(t, h, zero).norm(), 0.0);
  EXPECT_LT((yukawa_operator(t, h, vacuum_values(h)) - assemble_dirac(t)).norm(), 1e-12);
}

// ------------------------------------------------------------------ potential

TEST(Potential, StandardModelQuartic) {
  std::mt19937_64 rng(6);
  for (int draw = 0; draw < 20; ++draw) {
    StandardModelInput in = diagonal_sm(rng);
    const double F4 = 0.5 + draw * 0.1;
    auto sc = spectral_constants(0.0, 1.0, F4, 1.0, 4.0, 4);
    auto t = standard_model(in);
    auto h = higgs_fields(t, sc.X);
    auto pc = scalar_potential(t, h, sc);
    double L = 0.0, Q = 0.0;
    for (auto [M, w] : {std::pair{in.Me, 1.0}, {in.Mu, 3.0}, {in.Md, 3.0}}) {
      CMatrix mm = M * M.adjoint();
      L += w * mm.trace().real();
      Q += w * (mm * mm).trace().real();
    }
    const double lambda = sq(kPi) * Q / (2.0 * F4 * L * L);
    auto rep = build_representation(t.algebra, t.mu);
    HiggsValues v = random_higgs_values(rep, h, rng);
    const double r2 = v[0].squaredNorm();
    EXPECT_NEAR(quartic_value(t, h, pc, v), lambda * r2 * r2, 1e-9 * lambda * r2 * r2);
  }
}

TEST(Potential, CrossInvariantVanishes) {
  std::mt19937_64 rng(7);
  auto t = standard_model(diagonal_sm(rng));
  auto h = higgs_fields(t);
  auto rep = build_representation(t.algebra, t.mu);
  for (int s = 0; s < 10; ++s) {
    HiggsValues v = random_higgs_values(rep, h, rng);
    CMatrix phi = oriented_field(rep, h, v, 0, 1, 0);
    CMatrix tilde = oriented_field(rep, h, v, 2, 1, 0);
    // The loop F01 F12 F21 F10 factors through Phi (i sigma_2 conj Phi)*.
    EXPECT_EQ((phi * tilde.adjoint())(0, 0), cplx(0.0));
    EXPECT_EQ((phi * tilde.adjoint() * tilde * phi.adjoint()).trace(), cplx(0.0));
  }
}

TEST(Potential, LoopsMatchDirectEvaluation) {
  std::mt19937_64 rng(8);
  auto sc = spectral_constants(0.0, 1.0, 1.0, 1.0, 4.0, 4);
  for (int s = 0; s < 5; ++s) {
    auto t = standard_model(diagonal_sm(rng));
    auto h = higgs_fields(t, sc.X);
    auto pc = scalar_potential(t, h, sc);
    auto rep = build_representation(t.algebra, t.mu);
    HiggsValues v = random_higgs_values(rep, h, rng);
    const double direct = potential_direct(t, h, sc, v);
    EXPECT_NEAR(potential_value(t, h, pc, v), direct, 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Potential, GaugeInvariance) {
  std::mt19937_64 rng(9);
  auto sc = spectral_constants(0.0, 1.0, 1.0, 1.0, 4.0, 4);
  StandardModelInput in = diagonal_sm(rng);
  in.Md = ckm_matrix(0.227, 0.0037, 0.0415, 1.2) * in.Md;
  auto t = standard_model(in);
  auto h = higgs_fields(t, sc.X);
  auto pc = scalar_potential(t, h, sc);
  auto rep = build_representation(t.algebra, t.mu);
  for (int s = 0; s < 10; ++s) {
    HiggsValues v = random_higgs_values(rep, h, rng);
    HiggsValues w = gauge_transform_higgs(rep, h, v, rep.random_unitary(rng));
    const double V = potential_value(t, h, pc, v);
    EXPECT_NEAR(potential_value(t, h, pc, w), V, 1e-9 * std::max(1.0, std::abs(V)));
  }
}

// -------------------------------------------------------------------- SSB

TEST(MassBound, ZeroVacuum) {
  auto t = standard_model(StandardModelInput{CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), CMatrix::Zero(3, 3)});
  auto rep = build_representation(t.algebra, t.mu);
  auto b = mass_bound_check(rep, CMatrix::Zero(rep.dim(), rep.dim()));
  EXPECT_EQ(b.m_b, 0.0);
  EXPECT_EQ(b.m_f, 0.0);
  EXPECT_TRUE(b.holds);
}

TEST(MassBound, RandomSmallTriples) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    auto triple = random_small_triple(rng);
    auto rep = build_representation(triple.algebra, triple.mu);
    auto b = mass_bound_check(rep, assemble_dirac(rep, triple));
    EXPECT_TRUE(b.holds);
    EXPECT_LE(b.m_b * b.m_b, 6.0 * b.m_f * b.m_f + 1e-9);
  }
}

TEST(MassBound, StandardModelVacuum) {
  std::mt19937_64 rng(11);
  auto t = standard_model(diagonal_sm(rng));
  auto rep = build_representation(t.algebra, t.mu);
  auto b = mass_bound_check(rep, assemble_dirac(t));
  EXPECT_TRUE(b.holds);
  EXPECT_GT(b.m_f, 0.0);
  EXPECT_LE(b.ratio, 6.0 + 1e-9);
}

// --------------------------------------------------------------- Poincare

TEST(Intersection, StandardModelForm) {
  IMatrix expect(3, 3);
  expect << 1, -1, 1, -1, 0, -1, 1, -1, 0;
  expect *= 6;
  IMatrix f = intersection_form(standard_model_algebra(), standard_model_mu());
  EXPECT_EQ(f, expect);
  EXPECT_EQ(integer_determinant(f), 216);
}

TEST(Intersection, RightNeutrinos) {
  for (int n = 1; n <= 3; ++n)
    for (int eps = 1; eps <= 2; ++eps) {
      IMatrix f = intersection_form(standard_model_algebra(), standard_model_mu(n * eps));
      // Cofactor expansion along the first row.
      const long long det = f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1)) -
                            f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0)) +
                            f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0));
      EXPECT_EQ(integer_determinant(f), det);
      EXPECT_EQ(det == 0, n == 3 && eps == 2) << n << " " << eps;
    }
}

TEST(Intersection, MergedComplexAndPermutation) {
  MultiplicityMatrix mu;
  mu.mu = IMatrix(3, 3);
  mu.mu << 1, 2, 0, 2, -1, 3, 0, 3, 1;
  auto alg = complex_algebra({1, 2, 1});
  EXPECT_EQ(intersection_form(alg, mu), mu.mu);

  std::vector<int> perm{2, 0, 1};
  AlgebraSpec palg;
  MultiplicityMatrix pmu;
  pmu.mu = IMatrix(3, 3);
  for (int a = 0; a < 3; ++a) {
    palg.summands.push_back(alg.summands[perm[a]]);
    palg.reps.push_back({a, false});
    for (int b = 0; b < 3; ++b) pmu.mu(a, b) = mu.mu(perm[a], perm[b]);
  }
  EXPECT_EQ(integer_determinant(intersection_form(palg, pmu)), integer_determinant(intersection_form(alg, mu)));
}

TEST(Intersection, IntegerDeterminantOracle) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int t = 0; t < 30; ++t) {
    IMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = e(rng);
    // Permutation expansion.
    std::vector<int> p{0, 1, 2, 3};
    long long det = 0;
    do {
      long long prod = 1;
      int inv = 0;
      for (int i = 0; i < 4; ++i) {
        prod *= m(i, p[i]);
        for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
      }
      det += inv % 2 ? -prod : prod;
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_EQ(integer_determinant(m), det);
  }
}

// ------------------------------------------------------------------ report

TEST(ModelReport, StandardModel) {
  std::mt19937_64 rng(13);
  auto sc = spectral_constants(0.0, 1.0, 1.0, 1.0, 4.0, 4);
  auto r = build_model_report(standard_model(diagonal_sm(rng)), sc);
  EXPECT_EQ(r.abelian.N, 2);
  EXPECT_EQ(r.intersection_det, 216);
  ASSERT_TRUE(r.mass_bound.has_value());
  EXPECT_TRUE(r.mass_bound->holds);
  ASSERT_TRUE(r.anomalies.has_value());
  EXPECT_FALSE(r.flags.empty());
}
