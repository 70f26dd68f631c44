// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>

#include <Eigen/Dense>

namespace ncg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using IMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Worker cap: set_worker_count override, else NCG_FORGE_THREADS, else the
// hardware concurrency. Always at least 1.
int worker_count();
void set_worker_count(int n);  // n <= 0 clears the override
// Runs body(i) for i in [0, count) on up to worker_count() threads.
void parallel_for(int count, const std::function<void(int)>& body);

// Largest singular value, via the Hermitian eigensolve of m m*.
double opnorm(const CMatrix& m);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

// Throws InputError when m is not Hermitian within tol.
EigenDecomposition hermitian_eigen(const CMatrix& m, double tol = 1e-10);

CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tol = 1e-12);

// Direct sum of square or rectangular blocks.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols);
CMatrix random_hermitian(std::mt19937_64& rng, int n);
CMatrix random_unitary(std::mt19937_64& rng, int n);

// Standard Pauli matrices sigma_1..sigma_3 (k in 1..3).
CMatrix pauli(int k);

// Grassmann algebra on at most 24 generators. Monomials are stored as bitmasks
// with generators in ascending order; multiplication tracks the reordering sign.
class GrassmannPoly {
 public:
  static constexpr int kMaxGenerators = 24;
  using Mask = std::uint32_t;

  GrassmannPoly() = default;
  explicit GrassmannPoly(int generators);
  static GrassmannPoly scalar(int generators, cplx c);
  static GrassmannPoly generator(int generators, int k, cplx c = 1.0);

  int generators() const { return gens_; }
  const std::map<Mask, cplx>& terms() const { return terms_; }
  cplx coeff(Mask m) const;
  cplx scalar_part() const { return coeff(0); }
  bool is_zero(double tol = 0.0) const;
  double max_abs() const;

  void add_term(Mask m, cplx c);
  GrassmannPoly& operator+=(const GrassmannPoly& o);
  GrassmannPoly& operator-=(const GrassmannPoly& o);
  GrassmannPoly& operator*=(cplx c);
  GrassmannPoly operator-() const;

  // Coefficient X1 in x = X0 + g_k X1 with X0, X1 free of generator k.
  GrassmannPoly left_coefficient(int k) const;
  GrassmannPoly drop_generator(int k) const;

  void prune(double tol = 1e-15);

 private:
  int gens_ = 0;
  std::map<Mask, cplx> terms_;
};

// Sign of moving the generators of b past those of a into ascending order.
int grassmann_sign(GrassmannPoly::Mask a, GrassmannPoly::Mask b);

GrassmannPoly gr_mul(const GrassmannPoly& x, const GrassmannPoly& y);
GrassmannPoly operator+(GrassmannPoly a, const GrassmannPoly& b);
GrassmannPoly operator-(GrassmannPoly a, const GrassmannPoly& b);
GrassmannPoly operator*(cplx c, GrassmannPoly a);
inline GrassmannPoly operator*(const GrassmannPoly& a, const GrassmannPoly& b) { return gr_mul(a, b); }

}  // namespace ncg
