// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <array>

#include "ncg/torus.hpp"

namespace ncg {

// Euclidean metric throughout; momenta are integer modes of the torus.
double momentum_sq(const Mode& p);

// -(4 pi^2 / p^2) (delta_{mu nu} - (1 - alpha) p_mu p_nu / p^2). Zero mode is an input error.
double gluon_propagator(const Mode& p, int mu, int nu, double alpha);
// -4 pi^2 / p^2
double ghost_propagator(const Mode& p);
// Gauge-fixed quadratic kernel -4 pi^2 (p^2 delta - (1 - 1/alpha) p p), n x n.
RMatrix gluon_kinetic(const Mode& p, int n, double alpha);
RMatrix gluon_propagator_matrix(const Mode& p, int n, double alpha);

// S3 = (1/3!) sum V3 A^p_mu A^q_nu A^r_rho with
// V3 = 4 pi g sin(pi theta(p,q)) [(p-r)_nu d_{mu rho} + (q-p)_rho d_{mu nu} + (r-q)_mu d_{nu rho}] delta(p+q+r).
double vertex3(const Mode& p, const Mode& q, const Mode& r, int mu, int nu, int rho, double g,
               const Theta& theta);
// S4 = (1/4!) sum V4 A A A A; V4 is the Bose symmetrization of
// g^2 sin(pi theta(p,q)) sin(pi theta(r,s)) d_{mu rho} d_{nu sigma} delta(p+q+r+s).
double vertex4(const std::array<Mode, 4>& k, const std::array<int, 4>& idx, double g, const Theta& theta);
// Cbar^r A^p_mu C^q coupling 4 pi g r_mu sin(pi theta(p,q)) delta(p+q+r).
double ghost_vertex(const Mode& p, const Mode& q, const Mode& r, int mu, double g, const Theta& theta);

struct LoopProbe {
  int K = 0;
  double sum_K = 0.0, sum_2K = 0.0;
  long terms_K = 0, terms_2K = 0;
};

// Trace of the Feynman-gauge gluon bubble
// (1/2) sum_k V3(p, -k, k-p) P(k) P(p-k) V3(-p, k, p-k) over internal modes
// k != 0, p - k != 0, |k|_inf <= K, evaluated at cutoffs K and 2K. n = 4.
LoopProbe loop_sum_probe(const Mode& p, int K, const Theta& theta, double g = 1.0);

}  // namespace ncg
