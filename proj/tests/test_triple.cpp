// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
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

MultiplicityMatrix mu_of(std::initializer_list<std::initializer_list<long long>> rows) {
  MultiplicityMatrix m;
  const int n = static_cast<int>(rows.size());
  m.mu = IMatrix(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (long long v : r) m.mu(i, j++) = v;
    ++i;
  }
  return m;
}

StandardModelInput sm_input(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.1, 3.0);
  StandardModelInput in;
  in.Me = CMatrix::Zero(3, 3);
  in.Mu = CMatrix::Zero(3, 3);
  CMatrix d = CMatrix::Zero(3, 3);
  for (int g = 0; g < 3; ++g) {
    in.Me(g, g) = U(rng);
    in.Mu(g, g) = U(rng);
    d(g, g) = U(rng);
  }
  in.Md = ckm_matrix(0.227, 0.0037, 0.0415, 1.2) * d;
  return in;
}

std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  return s;
}

}  // namespace

TEST(Representation, TwoPointExample) {
  auto rep = build_representation(complex_algebra({1, 1}), mu_of({{0, 1}, {1, 0}}));
  EXPECT_EQ(rep.dim(), 2);
  EXPECT_TRUE(rep.chirality().isApprox(CMatrix::Identity(2, 2)));
  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  EXPECT_TRUE(rep.J_permutation().isApprox(swap));
}

TEST(Representation, StandardModelDimension) {
  auto rep = build_representation(standard_model_algebra(), standard_model_mu());
  EXPECT_EQ(rep.dim(), 90);
  EXPECT_EQ(rep.rep_dims(), (std::vector<int>{1, 2, 1, 3}));
}

TEST(Representation, RejectsBadMultiplicities) {
  EXPECT_THROW(build_representation(complex_algebra({1, 1}), mu_of({{1, 0}, {0, 0}})), InputError);
  EXPECT_THROW(build_representation(complex_algebra({1, 1}), mu_of({{0, 1}, {2, 0}})), InputError);
  EXPECT_THROW(build_representation(complex_algebra({1, 1, 1}), mu_of({{0, 1}, {1, 0}})), InputError);
}

TEST(Representation, JIsAnInvolutionCommutingWithChirality) {
  std::mt19937_64 rng(1);
  auto rep = build_representation(standard_model_algebra(), standard_model_mu());
  const CMatrix& P = rep.J_permutation();
  const int n = rep.dim();
  EXPECT_LT((P * P.conjugate() - CMatrix::Identity(n, n)).norm(), 1e-14);
  EXPECT_LT((rep.conj_by_J(rep.chirality()) - rep.chirality()).norm(), 1e-14);
  // J pi(b) J^-1 commutes with pi(a): order-zero condition.
  for (int t = 0; t < 5; ++t) {
    CMatrix a = rep.pi(rep.random_element(rng)), b = rep.jpj(rep.random_element(rng));
    EXPECT_LT(opnorm(a * b - b * a), 1e-12 * std::max(1.0, opnorm(a) * opnorm(b)));
  }
}

TEST(Representation, QuaternionPattern) {
  std::mt19937_64 rng(2);
  CMatrix x = random_matrix(rng, 2, 2), y = random_matrix(rng, 2, 2);
  CMatrix q = quaternion_embed(x, y);
  EXPECT_TRUE(is_quaternionic(q));
  // [[x, -conj y], [y, conj x]] per entry.
  EXPECT_EQ(q(0, 0), x(0, 0));
  EXPECT_EQ(q(1, 0), y(0, 0));
  EXPECT_EQ(q(0, 1), -std::conj(y(0, 0)));
  EXPECT_EQ(q(1, 1), std::conj(x(0, 0)));
  CMatrix bad = q;
  bad(0, 0) += 1e-6;
  EXPECT_FALSE(is_quaternionic(bad));
}

TEST(Dirac, ZeroBlocksGiveZero) {
  FiniteTriple t;
  t.algebra = standard_model_algebra();
  t.mu = standard_model_mu();
  EXPECT_EQ(assemble_dirac(t).norm(), 0.0);
  auto rep = build_representation(t.algebra, t.mu);
  auto split = decompose_dirac(rep, CMatrix::Zero(90, 90));
  EXPECT_EQ(split.delta.norm(), 0.0);
}

TEST(Dirac, StandardModelSpectrum) {
  std::mt19937_64 rng(3);
  StandardModelInput in = sm_input(rng);
  CMatrix D = assemble_dirac(standard_model(in));
  auto e = hermitian_eigen(D);
  std::vector<double> got;
  for (int i = 0; i < 90; ++i) got.push_back(std::abs(e.values(i)));
  std::sort(got.begin(), got.end());
  // Oracle: each lepton mass appears 4 times (+-m, particle and mirror), each
  // quark mass 12 times (times colour), the six neutrino states are massless.
  std::vector<double> expect(6, 0.0);
  for (double m : singular_values(in.Me)) expect.insert(expect.end(), 4, m);
  for (double m : singular_values(in.Mu)) expect.insert(expect.end(), 12, m);
  for (double m : singular_values(in.Md)) expect.insert(expect.end(), 12, m);
  std::sort(expect.begin(), expect.end());
  ASSERT_EQ(got.size(), expect.size());
  for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-10);
}

TEST(Dirac, SingleBlockNorm) {
  std::mt19937_64 rng(4);
  FiniteTriple t;
  t.algebra = complex_algebra({2, 3, 1});
  t.mu = mu_of({{0, 0, 1}, {0, 0, -1}, {1, -1, 0}});
  CMatrix M = random_matrix(rng, 2, 3);
  t.dirac_blocks[{0, 1, 2}] = M;
  EXPECT_NEAR(opnorm(assemble_dirac(t)), opnorm(M), 1e-12);
}

TEST(Dirac, ShapeAndChiralityErrors) {
  FiniteTriple t;
  t.algebra = complex_algebra({2, 3, 1});
  t.mu = mu_of({{0, 0, 1}, {0, 0, -1}, {1, -1, 0}});
  t.dirac_blocks[{0, 1, 2}] = CMatrix::Zero(3, 2);
  EXPECT_THROW(assemble_dirac(t), InputError);
  FiniteTriple s;
  s.algebra = complex_algebra({1, 1});
  s.mu = mu_of({{1, 1}, {1, 1}});
  s.dirac_blocks[{0, 1, 0}] = CMatrix::Ones(1, 1);
  EXPECT_THROW(assemble_dirac(s), InvariantError);
}

TEST(Dirac, DecomposeAssembleRoundTrip) {
  std::mt19937_64 rng(5);
  FiniteTriple t = standard_model(sm_input(rng));
  auto rep = build_representation(t.algebra, t.mu);
  CMatrix D = assemble_dirac(rep, t);
  auto split = decompose_dirac(rep, D);
  EXPECT_LT((split.delta + split.jdeltaj - D).norm(), 1e-10);
  auto blocks = blocks_from_delta(rep, split.delta);
  ASSERT_EQ(blocks.size(), t.dirac_blocks.size());
  for (const auto& [k, m] : t.dirac_blocks) {
    ASSERT_TRUE(blocks.count(k));
    EXPECT_LT((blocks.at(k) - m).norm(), 1e-12);
  }
}

TEST(Dirac, DeltaIsAOneForm) {
  std::mt19937_64 rng(6);
  FiniteTriple t = standard_model(sm_input(rng));
  auto rep = build_representation(t.algebra, t.mu);
  CMatrix D = assemble_dirac(rep, t);
  auto split = decompose_dirac(rep, D);
  CMatrix oneform = CMatrix::Zero(90, 90);
  for (int k = 0; k < 3; ++k) {
    CMatrix u = rep.summand_unit(k);
    oneform -= u * (D * u - u * D);
  }
  EXPECT_LT((oneform - split.delta).norm(), 1e-12 * std::max(1.0, D.norm()));
}

TEST(Dirac, SpectrumSymmetric) {
  std::mt19937_64 rng(7);
  CMatrix D = assemble_dirac(standard_model(sm_input(rng)));
  auto e = hermitian_eigen(D);
  for (int i = 0; i < 90; ++i) EXPECT_NEAR(e.values(i), -e.values(89 - i), 1e-10);
}

TEST(Dirac, FirstOrderDecompositionFailure) {
  auto rep = build_representation(complex_algebra({1, 1}), mu_of({{1, -1}, {-1, 1}}));
  // A Hermitian operator joining H_00 to H_11 breaks the first-order condition.
  CMatrix D = CMatrix::Zero(rep.dim(), rep.dim());
  int a = rep.blocks()[rep.block_index(0, 0)].offset, b = rep.blocks()[rep.block_index(1, 1)].offset;
  D(a, b) = D(b, a) = 1.0;
  EXPECT_THROW(decompose_dirac(rep, D), DecompositionError);
}

TEST(Axioms, StandardModelPasses) {
  std::mt19937_64 rng(8);
  auto r = validate_axioms(standard_model(sm_input(rng)));
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.s0_real);
  EXPECT_NE(r.poincare_determinant, 0);
  for (const auto& c : r.checks) EXPECT_GE(c.residual, 0.0);
}

TEST(Axioms, LeptoquarkBreaksS0Reality) {
  std::mt19937_64 rng(9);
  StandardModelInput in = sm_input(rng);
  in.leptoquark = true;
  in.leptoquark_phi = random_matrix(rng, 3, 2);
  in.leptoquark_M = random_matrix(rng, 3, 3);
  auto r = validate_axioms(standard_model(in));
  EXPECT_TRUE(r.all_pass());
  EXPECT_FALSE(r.s0_real);
}

TEST(Axioms, CommutativeTriplesForceZeroDirac) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int N : {2, 3, 4}) {
    std::vector<int> sizes(N, 1);
    MultiplicityMatrix mu;
    mu.mu = IMatrix::Zero(N, N);
    for (int i = 0; i < N; ++i) mu.mu(i, i) = sign(rng) ? 1 : -1;
    auto rep = build_representation(complex_algebra(sizes), mu);
    EXPECT_TRUE(validate_operator(rep, CMatrix::Zero(N, N)).all_pass());
    for (int t = 0; t < 10; ++t) {
      // Any nonzero Hermitian D commuting with J (real symmetric here).
      RMatrix s = RMatrix::Random(N, N);
      CMatrix D = (s + s.transpose()).cast<cplx>();
      EXPECT_FALSE(validate_operator(rep, D).all_pass());
    }
  }
}

TEST(OneForms, EmptyAndStandardModel) {
  FiniteTriple t;
  t.algebra = complex_algebra({1, 1});
  t.mu = mu_of({{0, 1}, {1, 0}});
  EXPECT_EQ(one_form_space(t).dimension, 0);
  std::mt19937_64 rng(11);
  auto sm = one_form_space(standard_model(sm_input(rng)));
  int independent = 0;
  for (const auto& L : sm.links) {
    EXPECT_EQ(L.multiplicity, 1);
    ++independent;
  }
  EXPECT_GE(independent, 1);
}

TEST(OneForms, TwoIndependentBlocksGiveMultiplicityTwo) {
  FiniteTriple t;
  t.algebra = complex_algebra({2, 1, 1, 1});
  t.mu = mu_of({{0, 0, 1, 1}, {0, 0, -1, -1}, {1, -1, 0, 0}, {1, -1, 0, 0}});
  CMatrix v1(2, 1), v2(2, 1);
  v1 << 1.0, 0.5;
  v2 << cplx(0.0, 1.0), -2.0;
  t.dirac_blocks[{0, 1, 2}] = v1;
  t.dirac_blocks[{0, 1, 3}] = v2;
  auto space = one_form_space(t);
  bool found = false;
  for (const auto& L : space.links)
    if (L.i == 0 && L.k == 1) {
      found = true;
      EXPECT_EQ(L.multiplicity, 2);
      EXPECT_TRUE(L.outside_reconstruction);
    }
  EXPECT_TRUE(found);
  // Same blocks made parallel collapse to one.
  t.dirac_blocks[{0, 1, 3}] = cplx(3.0) * v1;
  for (const auto& L : one_form_space(t).links)
    if (L.i == 0 && L.k == 1) EXPECT_EQ(L.multiplicity, 1);
}

TEST(OneForms, NormalizationX) {
  std::mt19937_64 rng(12);
  FiniteTriple t = standard_model(sm_input(rng));
  auto rep = build_representation(t.algebra, t.mu);
  for (double X : {1.0, 2.5}) {
    auto space = one_form_space(t, X);
    for (const auto& L : space.links)
      for (int p = 0; p < L.multiplicity; ++p) {
        // The basis is normalised over the whole orbit, derived member included.
        double s = 0.0;
        for (const auto& [j, m] : L.M[p]) s += rep.rep_dim(j) * (m.adjoint() * m).trace().real();
        for (const auto& member : L.derived_M)
          for (const auto& [j, m] : member[p]) s += rep.rep_dim(j) * (m.adjoint() * m).trace().real();
        EXPECT_NEAR(s, X, 1e-10 * X);
      }
  }
}

TEST(Diagrams, StandardModelShape) {
  std::mt19937_64 rng(13);
  FiniteTriple t = standard_model(sm_input(rng));
  Diagram d = diagram_of(t);
  long long nonzero = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) nonzero += t.mu.mu(i, j) != 0;
  EXPECT_EQ(static_cast<long long>(d.vertices.size()), nonzero);
  std::set<int> vertical_columns;
  for (const auto& l : d.links) {
    if (l.kind == Diagram::LinkKind::Vertical) vertical_columns.insert(l.b1);
    int s1 = 0, s2 = 0;
    for (const auto& v : d.vertices) {
      if (v.i == l.a1 && v.j == l.b1) s1 = v.sign;
      if (v.i == l.a2 && v.j == l.b2) s2 = v.sign;
    }
    EXPECT_EQ(s1, -s2);
  }
  // Lepton column (Cbar) and quark column (M3).
  EXPECT_EQ(vertical_columns, (std::set<int>{2, 3}));
}

TEST(Diagrams, RoundTrip) {
  std::mt19937_64 rng(14);
  FiniteTriple t = standard_model(sm_input(rng));
  Diagram d = diagram_of(t);
  FiniteTriple back = triple_from_diagram(t.algebra, d, t.dirac_blocks);
  EXPECT_EQ(diagram_of(back), d);
  EXPECT_LT((assemble_dirac(back) - assemble_dirac(t)).norm(), 1e-14);
}

TEST(Diagrams, EmptyLinksGiveZeroDirac) {
  Diagram d = diagram_of(FiniteTriple{standard_model_algebra(), standard_model_mu(), {}, {}});
  EXPECT_TRUE(d.links.empty());
  FiniteTriple t = triple_from_diagram(standard_model_algebra(), d, {});
  EXPECT_EQ(assemble_dirac(t).norm(), 0.0);
}

TEST(Diagrams, SameSignLinkRejected) {
  std::mt19937_64 rng(15);
  FiniteTriple t = standard_model(sm_input(rng));
  Diagram d = diagram_of(t);
  Diagram::Link bad{Diagram::LinkKind::Vertical, 0, 2, 0, 3};
  d.links.push_back(bad);
  EXPECT_THROW(triple_from_diagram(t.algebra, d, t.dirac_blocks), InvariantError);
}
