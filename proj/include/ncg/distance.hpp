// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ncg/linalg.hpp"

namespace ncg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Blocks below this operator norm count as absent links.
inline constexpr double kLinkThreshold = 1e-14;

// Pure states of C^N realised on H = sum_a C^{d_a}, Dirac operator Delta with
// zero diagonal blocks. Only blocks (a, b) with a < b are stored; the lower
// half is the adjoint.
struct DistanceProblem {
  std::vector<int> dims;
  std::map<std::pair<int, int>, CMatrix> blocks;
  int i = 0, j = 1;

  int points() const { return static_cast<int>(dims.size()); }
  // Block (a, b) for any a != b, zero matrix when absent.
  CMatrix block(int a, int b) const;
  void set_block(int a, int b, const CMatrix& m);
  CMatrix matrix() const;
  bool linked(int a, int b) const;
  void validate() const;

  // All points one-dimensional, Delta given as a real symmetric matrix.
  static DistanceProblem scalar(const RMatrix& delta);
  // Full Hermitian matrix split according to dims. Throws on a nonzero
  // diagonal block.
  static DistanceProblem from_matrix(const std::vector<int>& dims, const CMatrix& delta);
};

struct DistanceResult {
  double value = 0.0;
  bool infinite = false;
  RVector x;              // certificate, x_j = 0
  int iterations = 0;     // Newton steps
  double constraint = 0.0;  // ||[Delta, x]|| at the certificate
  double gap = 0.0;         // upper bound on optimum - value
};

// Interior-point solve of max x_i - x_j subject to ||[Delta, x]|| <= 1.
DistanceResult distance_numeric(const DistanceProblem& p, double tol = 1e-9);
DistanceResult distance_numeric(const DistanceProblem& p, int i, int j, double tol = 1e-9);

// Connected components of the link graph, one label per point.
std::vector<int> link_components(const DistanceProblem& p);

struct GeodesicBound {
  double length = kInfinity;
  bool connected = false;
  std::vector<int> path;
};

GeodesicBound geodesic_bound(const DistanceProblem& p, int i, int j);

// Closed forms on three and four points.
std::array<double, 3> distance_three_point(double d12, double d13, double d23);
std::array<double, 3> deltas_from_distances(double d12, double d13, double d23);
double distance_chain4(double delta12, double delta23, double delta34);
double chain_uniform(int n, double L);
DistanceProblem chain_problem(const std::vector<double>& links);

// Two-dimensional points linked by [[0, 1/L], [0, 0]].
DistanceProblem lattice_dirac(int N, double L);

// Pure state of M_n(C) + C: the point of C, or a unit vector of C^n.
struct MnState {
  bool point = false;
  CVector xi;
  static MnState c_point() { return {true, {}}; }
  static MnState vector(const CVector& v) { return {false, v}; }
};

inline constexpr double kMnGateTol = 1e-10;

double distance_mn_plus_c(const CVector& m, const MnState& a, const MnState& b);
// Brute-force oracle over Hermitian x in M_n, n <= 3. Returns +infinity when
// the optimum runs into the box of radius `box`.
double distance_mn_plus_c_numeric(const CVector& m, const MnState& a, const MnState& b,
                                  double box = 1e6);

}  // namespace ncg
