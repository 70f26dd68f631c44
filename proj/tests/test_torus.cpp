// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/torus.hpp"

using namespace ncg;

namespace {


Mode mode(std::initializer_list<int> p) { return make_mode(std::vector<int>(p)); }

ThetaPtr random_theta(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RMatrix t = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      t(i, j) = U(rng);
      t(j, i) = -t(i, j);
    }
  return Theta::make(t);
}

double diff(const NCPoly& a, const NCPoly& b) { return (a - b).max_abs(); }
double diff(const MatNCPoly& a, const MatNCPoly& b) { return (a - b).max_abs(); }

double diff(const Connection& a, const Connection& b) {
  double m = 0.0;
  for (size_t mu = 0; mu < a.size(); ++mu) m = std::max(m, diff(a[mu], b[mu]));
  return m;
}

// Products of diag(U^p, 1) with constant unitaries: exact finite-support
// unitaries that do not commute with A.
MatNCPoly monomial_unitary(const ThetaPtr& th, std::mt19937_64& rng, int rounds) {
  const int n = th->n();
  MatNCPoly u = MatNCPoly::identity(th, 2);
  for (int r = 0; r < rounds; ++r)
    for (int a = 0; a < n; ++a) {
      MatNCPoly D(th, 2);
      Mode p{};
      p[a] = 1;
      D(0, 0) = NCPoly::monomial(th, p);
      D(1, 1) = NCPoly::scalar(th, 1.0);
      u = mat_mul(mat_mul(u, D), MatNCPoly::constant(th, random_unitary(rng, 2)));
    }
  return u;
}

Connection random_connection(const ThetaPtr& th, int N, std::mt19937_64& rng) {
  Connection A;
  for (int mu = 0; mu < th->n(); ++mu) A.push_back(random_antihermitian(th, N, rng, 2, 1));
  return A;
}

}  // namespace

// ------------------------------------------------------------------ algebra

TEST(NCPoly, ProductLaw) {
  auto zero = Theta::zero(2);
  auto a = NCPoly::monomial(zero, mode({1, 0})), b = NCPoly::monomial(zero, mode({0, 1}));
  EXPECT_EQ(diff(a * b, b * a), 0.0);
  EXPECT_EQ(diff(a * b, NCPoly::monomial(zero, mode({1, 1}))), 0.0);

  auto th = Theta::blocks(2, {1.0 / 3.0});
  auto x = NCPoly::monomial(th, mode({1, 0})), y = NCPoly::monomial(th, mode({0, 1}));
  cplx expect = std::exp(cplx(0.0, kPi / 3.0));
  EXPECT_LT(std::abs((x * y).coeff(mode({1, 1})) - expect), 1e-15);
}

TEST(NCPoly, Trace) {
  auto th = Theta::blocks(3, {0.41});
  for (const Mode& p : {mode({1, 2, 0}), mode({-3, 0, 5}), mode({0, 0, 0})}) {
    auto u = NCPoly::monomial(th, p);
    EXPECT_NEAR(std::abs(nc_trace(u * nc_star(u)) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(nc_trace(u), is_zero_mode(p) ? cplx(1.0) : cplx(0.0));
  }
}

TEST(NCPoly, RandomisedIdentities) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    auto th = random_theta(rng, 1 + t % 4);
    auto a = random_ncpoly(th, rng, 5, 2), b = random_ncpoly(th, rng, 5, 2), c = random_ncpoly(th, rng, 5, 2);
    EXPECT_LT(diff((a * b) * c, a * (b * c)), 1e-12);
    EXPECT_LT(std::abs(nc_trace(a * b) - nc_trace(b * a)), 1e-12);
    EXPECT_EQ(diff(nc_star(nc_star(a)), a), 0.0);
    for (int mu = 0; mu < th->n(); ++mu) {
      EXPECT_LT(std::abs(nc_trace(nc_derive(a * b, mu))), 1e-12);
      // Leibniz rule.
      EXPECT_LT(diff(nc_derive(a * b, mu), nc_derive(a, mu) * b + a * nc_derive(b, mu)), 1e-10);
    }
    EXPECT_LT(diff(nc_star(a * b), nc_star(b) * nc_star(a)), 1e-12);
  }
}

TEST(NCPoly, CommutatorIsTwoISin) {
  auto th = Theta::blocks(2, {0.3});
  Mode p = mode({1, 2}), q = mode({-1, 1});
  auto c = nc_comm(NCPoly::monomial(th, p), NCPoly::monomial(th, q));
  EXPECT_LT(std::abs(c.coeff(p + q) - cplx(0.0, 2.0 * std::sin(kPi * (*th)(p, q)))), 1e-15);
}

TEST(NCPoly, ThetaMismatch) {
  auto a = NCPoly::monomial(Theta::blocks(2, {0.1}), mode({1, 0}));
  auto b = NCPoly::monomial(Theta::blocks(2, {0.2}), mode({1, 0}));
  EXPECT_THROW(a * b, InputError);
}

TEST(NCPoly, SupportCapacity) {
  auto th = Theta::zero(2);
  NCPoly a(th), b(th);
  for (int i = 0; i < 1001; ++i) {
    a.add_term(mode({i, 0}), 1.0);
    b.add_term(mode({0, i}), 1.0);
  }
  EXPECT_THROW(a * b, CapacityError);
}

TEST(Theta, RejectsNonAntisymmetric) {
  RMatrix t = RMatrix::Zero(2, 2);
  t(0, 1) = 0.3;
  t(1, 0) = 0.2;
  EXPECT_THROW(Theta::make(t), InputError);
}

TEST(Center, Examples) {
  auto th = Theta::blocks(2, {1.0 / 3.0});
  EXPECT_TRUE(center_test(mode({0, 0}), *th));
  EXPECT_TRUE(center_test(mode({3, 0}), *th));
  EXPECT_FALSE(center_test(mode({1, 0}), *th));
  // A central mode commutes with everything.
  auto z = NCPoly::monomial(th, mode({3, 6}));
  std::mt19937_64 rng(2);
  auto a = random_ncpoly(th, rng, 6, 3);
  EXPECT_LT(nc_comm(z, a).max_abs(), 1e-12);
}

TEST(Modular, TwoDimensionalSL2) {
  auto th = Theta::blocks(2, {0.37});
  for (auto [a, b, c, d] : {std::array{1, 1, 0, 1}, {2, 1, 1, 1}, {0, -1, 1, 0}, {5, 3, 3, 2}}) {
    IMatrix M(2, 2);
    M << a, b, c, d;
    EXPECT_TRUE(modular_compatible(M, *th));
  }
  IMatrix M(2, 2);
  M << 2, 0, 0, 1;
  EXPECT_FALSE(modular_compatible(M, *Theta::blocks(2, {1.0 / 3.0})));
}

TEST(SinValues, RationalThetaIsFinite) {
  const int N = 5;
  auto th = Theta::blocks(4, {2.0 / N, 3.0 / N});
  std::set<long long> values;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d) {
          Mode p = mode({a, b, 0, 1}), q = mode({c, d, 1, -2});
          values.insert(std::llround(th->sin_phase(p, q) * 1e9));
        }
  EXPECT_LE(values.size(), 2u * N);
}

// -------------------------------------------------------------------- forms

TEST(Forms, DifferentialOfMonomial) {
  auto th = Theta::blocks(3, {0.2});
  NCForm f(th, 1, 0);
  Mode p = mode({1, -2, 3});
  f.set({}, MatNCPoly::from_scalar(NCPoly::monomial(th, p)));
  NCForm df = ext_d(f);
  for (int mu = 0; mu < 3; ++mu)
    EXPECT_LT(std::abs(df.get({mu})(0, 0).coeff(p) - cplx(0.0, 2.0 * kPi * p[mu])), 1e-13);
}

TEST(Forms, Antisymmetry) {
  std::mt19937_64 rng(3);
  auto w = random_form(Theta::blocks(4, {0.3, 0.1}), 1, 2, rng, 3, 2);
  EXPECT_EQ(diff(w.get({2, 0}), cplx(-1.0) * w.get({0, 2})), 0.0);
  EXPECT_TRUE(w.get({1, 1}).is_zero());
}

TEST(Forms, DSquaredVanishes) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 5; ++n) {
    auto th = random_theta(rng, n);
    for (int p = 0; p + 2 <= n; ++p) {
      auto w = random_form(th, 2, p, rng, 3, 2);
      EXPECT_LT(ext_d(ext_d(w)).max_abs(), 1e-12) << n << " " << p;
    }
  }
}

TEST(Forms, HodgeSquareSign) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    auto th = random_theta(rng, n);
    for (int p = 0; p <= n; ++p) {
      auto w = random_form(th, 1, p, rng, 3, 2);
      NCForm hh = hodge(hodge(w));
      const double s = (p * (n - p)) % 2 ? -1.0 : 1.0;
      double m = 0.0;
      for (const auto& idx : combinations(n, p)) m = std::max(m, diff(hh.get(idx), cplx(s) * w.get(idx)));
      EXPECT_LT(m, 1e-12) << n << " " << p;
    }
  }
}

TEST(Forms, ClosednessOfExactTopForms) {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 4; ++n) {
    auto th = random_theta(rng, n);
    auto w = random_form(th, 2, n - 1, rng, 4, 2);
    EXPECT_LT(std::abs(form_integral(ext_d(w))), 1e-12);
  }
}

TEST(Forms, WedgeLeibniz) {
  std::mt19937_64 rng(7);
  auto th = random_theta(rng, 4);
  auto a = random_form(th, 1, 1, rng, 3, 1), b = random_form(th, 1, 2, rng, 3, 1);
  NCForm lhs = ext_d(wedge(a, b));
  NCForm rhs1 = wedge(ext_d(a), b), rhs2 = wedge(a, ext_d(b));
  double m = 0.0;
  for (const auto& idx : combinations(4, 4))
    m = std::max(m, diff(lhs.get(idx), rhs1.get(idx) - rhs2.get(idx)));
  EXPECT_LT(m, 1e-10);
}

// ----------------------------------------------------------------- curvature

TEST(Curvature, ZeroAndAbelianMonomial) {
  auto th = Theta::blocks(3, {0.3});
  Connection zero(3, MatNCPoly(th, 1));
  for (const auto& row : curvature(zero, std::nullopt, 1.0))
    for (const auto& f : row) EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(ym_action(zero, std::nullopt, 1.0), 0.0);

  Mode p = mode({1, 2, -1});
  std::vector<cplx> c{cplx(0.0, 0.5), cplx(0.0, -0.2), cplx(0.0, 1.1)};
  Connection A;
  for (int mu = 0; mu < 3; ++mu) A.push_back(MatNCPoly::from_scalar(NCPoly::monomial(th, p, c[mu])));
  auto F = curvature(A, std::nullopt, 0.8);
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      cplx expect = cplx(0.0, 2.0 * kPi) * (double(p[mu]) * c[nu] - double(p[nu]) * c[mu]);
      EXPECT_LT(std::abs(F[mu][nu](0, 0).coeff(p) - expect), 1e-13);
      EXPECT_EQ(F[mu][nu](0, 0).size(), F[mu][nu](0, 0).is_zero() ? 0u : 1u);
    }
}

TEST(Curvature, AntihermitianAndNonnegativeAction) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    auto th = random_theta(rng, 3);
    auto A = random_connection(th, 2, rng);
    auto F = curvature(A, std::nullopt, 0.9);
    for (const auto& row : F)
      for (const auto& f : row) EXPECT_LT(antihermitian_defect(f), 1e-12);
    EXPECT_GE(ym_action(A, std::nullopt, 0.9), 0.0);
    EXPECT_LT(bianchi_residual(A, std::nullopt, 0.9), 1e-10);
  }
}

TEST(Curvature, RejectsNonProjector) {
  auto th = Theta::blocks(2, {0.3});
  Connection A(2, MatNCPoly(th, 1));
  auto e = MatNCPoly::from_scalar(NCPoly::scalar(th, 0.5));
  EXPECT_THROW(curvature(A, e, 1.0), InvariantError);
}

TEST(Curvature, ConstantConnectionSolvesEquations) {
  auto th = Theta::blocks(2, {0.3});
  Connection A;
  for (int mu = 0; mu < 2; ++mu) A.push_back(MatNCPoly::from_scalar(NCPoly::scalar(th, cplx(0.0, 0.7 + mu))));
  for (const auto& r : eom_residual(A, std::nullopt, 1.0)) EXPECT_TRUE(r.is_zero(1e-14));
}

// ------------------------------------------------------------- gauge action

TEST(Gauge, TransformExamples) {
  std::mt19937_64 rng(9);
  auto th = Theta::blocks(3, {0.25});
  auto A = random_connection(th, 1, rng);
  EXPECT_LT(diff(gauge_transform(A, MatNCPoly::identity(th, 1), 1.0), A), 1e-15);

  const double g = 0.6;
  Mode p = mode({2, -1, 1});
  Connection zero(3, MatNCPoly(th, 1));
  auto Z = gauge_transform(zero, MatNCPoly::from_scalar(NCPoly::monomial(th, p)), g);
  for (int mu = 0; mu < 3; ++mu)
    EXPECT_LT(diff(Z[mu](0, 0), NCPoly::scalar(th, cplx(0.0, -2.0 * kPi * p[mu] / g))), 1e-13);
}

TEST(Gauge, Composition) {
  std::mt19937_64 rng(10);
  auto th = Theta::blocks(3, {1.0 / 3.0});
  auto A = random_connection(th, 2, rng);
  auto u = monomial_unitary(th, rng, 1), v = monomial_unitary(th, rng, 1);
  auto lhs = gauge_transform(gauge_transform(A, u, 0.7), v, 0.7);
  auto rhs = gauge_transform(A, mat_mul(v, u), 0.7);
  EXPECT_LT(diff(lhs, rhs), 1e-11);
}

TEST(Gauge, RejectsNonUnitary) {
  auto th = Theta::blocks(2, {0.3});
  Connection A(2, MatNCPoly(th, 1));
  EXPECT_THROW(gauge_transform(A, MatNCPoly::from_scalar(NCPoly::scalar(th, 2.0)), 1.0), InvariantError);
}

TEST(Gauge, YangMillsInvariance) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 4; ++t) {
    auto th = random_theta(rng, 3);
    auto A = random_connection(th, 2, rng);
    auto u = monomial_unitary(th, rng, 2);
    const double g = 0.5 + 0.3 * t;
    const double S = ym_action(A, std::nullopt, g);
    EXPECT_NEAR(ym_action(gauge_transform(A, u, g), std::nullopt, g), S, 1e-8 * std::max(1.0, S));
  }
}

// ------------------------------------------------------------ Chern-Simons

TEST(ChernSimons, ZeroAndMonomialDefect) {
  auto th = Theta::blocks(3, {0.3});
  Connection zero(3, MatNCPoly(th, 1));
  EXPECT_EQ(cs_action(zero, 1.0), 0.0);
  for (const Mode& p : {mode({1, 0, 0}), mode({2, -1, 3})})
    EXPECT_EQ(cs_gauge_defect(MatNCPoly::from_scalar(NCPoly::monomial(th, p)), 1.0), 0.0);
}

TEST(ChernSimons, DefectIdentity) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 3; ++t) {
    auto th = Theta::blocks(3, {1.0 / 3.0 + 0.1 * t});
    auto A = random_connection(th, 2, rng);
    auto u = monomial_unitary(th, rng, 2);
    const double k = 1.0 + t;
    const double shift = cs_action(gauge_transform(A, u, 1.0), k) - cs_action(A, k);
    const double gamma = cs_gauge_defect(u, k);
    EXPECT_NEAR(shift, gamma, 1e-8 * std::max(1.0, std::abs(gamma)));
  }
}

TEST(ChernSimons, ProjectorUnitaryWindsOnce) {
  RMatrix t = RMatrix::Zero(3, 3);
  t(0, 1) = -0.4;
  t(1, 0) = 0.4;
  auto th = Theta::make(t);
  NCPoly e = powers_rieffel_embedded(th, 0, 1, 0.4, 32);
  NCPoly u = e * NCPoly::monomial(th, mode({0, 0, 1})) + NCPoly::scalar(th, 1.0) - e;
  const double gamma = cs_gauge_defect(MatNCPoly::from_scalar(u), 1.0);
  EXPECT_NEAR(std::abs(gamma), 2.0 * kPi, 1e-5);
}

TEST(ChernSimons, NeedsThreeDimensions) {
  auto th = Theta::blocks(2, {0.3});
  Connection A(2, MatNCPoly(th, 1));
  EXPECT_THROW(cs_action(A, 1.0), DimensionError);
  EXPECT_THROW(cs_gauge_defect(MatNCPoly::identity(th, 1), 1.0), DimensionError);
}

// ---------------------------------------------------------------- topology

TEST(Topology, IdentityHasNoCharge) {
  auto th = Theta::blocks(4, {0.3, 0.2});
  auto r = topological_charge(MatNCPoly::identity(th, 2));
  EXPECT_EQ(r.c.norm(), 0.0);
  EXPECT_EQ(r.trace, 2.0);
  ASSERT_TRUE(r.q.has_value());
  EXPECT_EQ(*r.q, 0.0);
}

TEST(PowersRieffel, TraceDefectChern) {
  auto pr = powers_rieffel(0.4, 64);
  EXPECT_EQ(pr.trace, 0.4);
  EXPECT_LT(pr.defect, 1e-6);
  EXPECT_NEAR(pr.chern, 1.0, 1e-3);
  EXPECT_EQ(powers_rieffel(1.0 / 3.0, 16).trace, 1.0 / 3.0);
}

TEST(PowersRieffel, DefectDecreasesWithK) {
  EXPECT_LT(powers_rieffel(0.4, 32).defect, powers_rieffel(0.4, 16).defect);
}

TEST(PowersRieffel, RejectsBadLambda) {
  EXPECT_THROW(powers_rieffel(0.0, 16), InputError);
  EXPECT_THROW(powers_rieffel(1.2, 16), InputError);
}

TEST(PowersRieffel, ChargeReportAgrees) {
  auto pr = powers_rieffel(0.4, 48);
  auto r = topological_charge(MatNCPoly::from_scalar(pr.e));
  EXPECT_NEAR(r.c(0, 1), pr.chern, 1e-12);
  EXPECT_NEAR(r.c(1, 0), -pr.chern, 1e-12);
  EXPECT_NEAR(r.trace, 0.4, 1e-15);
  EXPECT_FALSE(r.q.has_value());
}

TEST(SecondPairing, ProductMatchesBruteForce) {
  auto th = Theta::blocks(4, {-0.4, -0.3});
  NCPoly f1 = powers_rieffel_embedded(th, 0, 1, 0.4, 3), f2 = powers_rieffel_embedded(th, 2, 3, 0.3, 3);
  const double brute = second_pairing(MatNCPoly::from_scalar(f1 * f2));
  const double product = second_pairing_product(MatNCPoly::from_scalar(f1), {0, 1}, MatNCPoly::from_scalar(f2), {2, 3});
  EXPECT_NEAR(product, brute, 1e-10 * std::max(1.0, std::abs(brute)));
}

TEST(SecondPairing, BlockProductIsOne) {
  auto th = Theta::blocks(4, {-0.4, -0.3});
  NCPoly e1 = powers_rieffel_embedded(th, 0, 1, 0.4, 16), e2 = powers_rieffel_embedded(th, 2, 3, 0.3, 16);
  EXPECT_NEAR(second_pairing_product(MatNCPoly::from_scalar(e1), {0, 1}, MatNCPoly::from_scalar(e2), {2, 3}), 1.0,
              5e-3);
}

// ------------------------------------------------------------ orientability

TEST(Orientability, CycleResidual) {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 5; ++n) {
    auto r = orientability_cycle(random_theta(rng, n));
    EXPECT_LT(r.residual, 1e-12) << n;
  }
  auto r2 = orientability_cycle(Theta::blocks(2, {0.3}));
  CMatrix g3 = CMatrix::Zero(2, 2);
  g3(0, 0) = 1.0;
  g3(1, 1) = -1.0;
  EXPECT_TRUE(r2.target.isApprox(g3));
  auto r3 = orientability_cycle(Theta::blocks(3, {0.3}));
  EXPECT_TRUE(r3.target.isApprox(CMatrix::Identity(r3.target.rows(), r3.target.cols())));
}

TEST(Orientability, GammaMatrices) {
  for (int n = 1; n <= 5; ++n) {
    auto g = gamma_matrices(n);
    const int d = int(g.front().rows());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CMatrix ac = g[a] * g[b] + g[b] * g[a];
        CMatrix expect = a == b ? CMatrix(2.0 * CMatrix::Identity(d, d)) : CMatrix(CMatrix::Zero(d, d));
        EXPECT_LT((ac - expect).norm(), 1e-14);
      }
  }
}
