// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/qft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ncg/errors.hpp"

namespace ncg {

namespace {

void require_nonzero(const Mode& p, const char* who) {
  if (is_zero_mode(p)) throw InputError(std::string(who) + ": the zero mode is not dynamical");
}

bool conserved(std::initializer_list<Mode> ks) {
  Mode s{};
  for (const auto& k : ks) s = s + k;
  return is_zero_mode(s);
}

double d(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

double momentum_sq(const Mode& p) {
  double s = 0.0;
  for (int v : p) s += double(v) * v;
  return s;
}

double gluon_propagator(const Mode& p, int mu, int nu, double alpha) {
  require_nonzero(p, "gluon_propagator");
  const double p2 = momentum_sq(p);
  return -4.0 * kPi * kPi / p2 * (d(mu, nu) - (1.0 - alpha) * p[mu] * p[nu] / p2);
}

double ghost_propagator(const Mode& p) {
  require_nonzero(p, "ghost_propagator");
  return -4.0 * kPi * kPi / momentum_sq(p);
}

RMatrix gluon_kinetic(const Mode& p, int n, double alpha) {
  if (alpha == 0.0) throw InputError("gluon_kinetic: alpha must be nonzero");
  RMatrix k(n, n);
  const double p2 = momentum_sq(p);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) k(a, b) = -4.0 * kPi * kPi * (p2 * d(a, b) - (1.0 - 1.0 / alpha) * p[a] * p[b]);
  return k;
}

RMatrix gluon_propagator_matrix(const Mode& p, int n, double alpha) {
  RMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = gluon_propagator(p, a, b, alpha);
  return m;
}

double vertex3(const Mode& p, const Mode& q, const Mode& r, int mu, int nu, int rho, double g,
               const Theta& theta) {
  if (!conserved({p, q, r})) return 0.0;
  const double s = theta.sin_phase(p, q);
  return 4.0 * kPi * g * s *
         ((p[nu] - r[nu]) * d(mu, rho) + (q[rho] - p[rho]) * d(mu, nu) + (r[mu] - q[mu]) * d(nu, rho));
}

double vertex4(const std::array<Mode, 4>& k, const std::array<int, 4>& idx, double g, const Theta& theta) {
  if (!conserved({k[0], k[1], k[2], k[3]})) return 0.0;
  std::array<int, 4> s{0, 1, 2, 3};
  double v = 0.0;
  do {
    const auto &a = k[s[0]], &b = k[s[1]], &c = k[s[2]], &e = k[s[3]];
    v += theta.sin_phase(a, b) * theta.sin_phase(c, e) * d(idx[s[0]], idx[s[2]]) * d(idx[s[1]], idx[s[3]]);
  } while (std::next_permutation(s.begin(), s.end()));
  return g * g * v;
}

double ghost_vertex(const Mode& p, const Mode& q, const Mode& r, int mu, double g, const Theta& theta) {
  if (!conserved({p, q, r})) return 0.0;
  return 4.0 * kPi * g * r[mu] * theta.sin_phase(p, q);
}

LoopProbe loop_sum_probe(const Mode& p, int K, const Theta& theta, double g) {
  if (theta.n() != 4) throw DimensionError("loop_sum_probe: needs n = 4");
  if (K < 1) throw InputError("loop_sum_probe: cutoff must be positive");
  require_nonzero(p, "loop_sum_probe");
  // One slice per value of k_0, summed in slice order so the result does not
  // depend on the worker count.
  auto bubble = [&](int cut, long& terms) {
    const int slices = 2 * cut + 1;
    std::vector<double> part(slices, 0.0);
    std::vector<long> count(slices, 0);
    parallel_for(slices, [&](int s) {
      Mode k{};
      k[0] = s - cut;
      for (k[1] = -cut; k[1] <= cut; ++k[1])
        for (k[2] = -cut; k[2] <= cut; ++k[2])
          for (k[3] = -cut; k[3] <= cut; ++k[3]) {
            Mode pk = p + (-k);
            if (is_zero_mode(k) || is_zero_mode(pk)) continue;
            ++count[s];
            // Feynman gauge: both propagators are diagonal and negative.
            const double prop = ghost_propagator(k) * ghost_propagator(pk);
            double v2 = 0.0;
            for (int mu = 0; mu < 4; ++mu)
              for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                  double v = vertex3(p, -k, -pk, mu, a, b, g, theta);
                  v2 += v * v;
                }
            part[s] += 0.5 * v2 * prop;
          }
    });
    double total = 0.0;
    for (int s = 0; s < slices; ++s) total += part[s], terms += count[s];
    return total;
  };
  LoopProbe out;
  out.K = K;
  out.sum_K = bubble(K, out.terms_K);
  out.sum_2K = bubble(2 * K, out.terms_2K);
  return out;
}

}  // namespace ncg
