// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/distance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>

#include "ncg/errors.hpp"

namespace ncg {

// ------------------------------------------------------------ problem

CMatrix DistanceProblem::block(int a, int b) const {
  if (a == b) return CMatrix::Zero(dims.at(a), dims.at(b));
  if (a < b) {
    auto it = blocks.find({a, b});
    return it == blocks.end() ? CMatrix::Zero(dims.at(a), dims.at(b)) : it->second;
  }
  auto it = blocks.find({b, a});
  return it == blocks.end() ? CMatrix::Zero(dims.at(a), dims.at(b)) : CMatrix(it->second.adjoint());
}

void DistanceProblem::set_block(int a, int b, const CMatrix& m) {
  if (a == b) throw InputError("distance: diagonal block of Delta must vanish");
  if (a < 0 || b < 0 || a >= points() || b >= points())
    throw InputError("distance: block index out of range");
  if (a < b)
    blocks[{a, b}] = m;
  else
    blocks[{b, a}] = m.adjoint();
}

bool DistanceProblem::linked(int a, int b) const {
  if (a == b) return false;
  auto it = blocks.find({std::min(a, b), std::max(a, b)});
  return it != blocks.end() && opnorm(it->second) >= kLinkThreshold;
}

CMatrix DistanceProblem::matrix() const {
  std::vector<int> off(dims.size() + 1, 0);
  for (size_t a = 0; a < dims.size(); ++a) off[a + 1] = off[a] + dims[a];
  CMatrix out = CMatrix::Zero(off.back(), off.back());
  for (const auto& [key, m] : blocks) {
    auto [a, b] = key;
    out.block(off[a], off[b], dims[a], dims[b]) = m;
    out.block(off[b], off[a], dims[b], dims[a]) = m.adjoint();
  }
  return out;
}

void DistanceProblem::validate() const {
  if (dims.size() < 2) throw InputError("distance: need at least two points");
  for (int d : dims)
    if (d < 1) throw InputError("distance: point dimensions must be positive");
  for (const auto& [key, m] : blocks) {
    auto [a, b] = key;
    if (a == b) throw InputError("distance: diagonal block of Delta must vanish");
    if (a < 0 || b >= points() || a > b) throw InputError("distance: block index out of range");
    if (m.rows() != dims[a] || m.cols() != dims[b])
      throw InputError("distance: block (" + std::to_string(a) + "," + std::to_string(b) +
                       ") has the wrong shape");
    if (!m.allFinite()) throw InputError("distance: non-finite block entry");
  }
  if (i < 0 || j < 0 || i >= points() || j >= points())
    throw InputError("distance: queried pair out of range");
}

DistanceProblem DistanceProblem::scalar(const RMatrix& delta) {
  if (delta.rows() != delta.cols()) throw InputError("distance: Delta must be square");
  CMatrix c = delta.cast<cplx>();
  return from_matrix(std::vector<int>(delta.rows(), 1), c);
}

DistanceProblem DistanceProblem::from_matrix(const std::vector<int>& dims, const CMatrix& delta) {
  DistanceProblem p;
  p.dims = dims;
  int total = std::accumulate(dims.begin(), dims.end(), 0);
  if (delta.rows() != total || delta.cols() != total)
    throw InputError("distance: Delta does not match the point dimensions");
  double scale = std::max(1.0, delta.cwiseAbs().maxCoeff());
  if ((delta - delta.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InputError("distance: Delta is not Hermitian");
  int oa = 0;
  for (int a = 0; a < p.points(); ++a) {
    int ob = 0;
    for (int b = 0; b < p.points(); ++b) {
      CMatrix blk = delta.block(oa, ob, dims[a], dims[b]);
      if (a == b && blk.cwiseAbs().maxCoeff() > 0.0)
        throw InputError("distance: diagonal block of Delta must vanish");
      if (a < b && blk.cwiseAbs().maxCoeff() > 0.0) p.blocks[{a, b}] = blk;
      ob += dims[b];
    }
    oa += dims[a];
  }
  p.validate();
  return p;
}

std::vector<int> link_components(const DistanceProblem& p) {
  int n = p.points();
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b)
        if (label[b] < 0 && p.linked(a, b)) {
          label[b] = next;
          stack.push_back(b);
        }
    }
    ++next;
  }
  return label;
}

GeodesicBound geodesic_bound(const DistanceProblem& p, int i, int j) {
  int n = p.points();
  if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("geodesic_bound: index out of range");
  std::vector<double> dist(n, kInfinity);
  std::vector<int> prev(n, -1);
  std::vector<bool> done(n, false);
  dist[i] = 0.0;
  for (int it = 0; it < n; ++it) {
    int a = -1;
    for (int k = 0; k < n; ++k)
      if (!done[k] && (a < 0 || dist[k] < dist[a])) a = k;
    if (a < 0 || dist[a] == kInfinity) break;
    done[a] = true;
    for (int b = 0; b < n; ++b) {
      if (done[b] || !p.linked(a, b)) continue;
      double w = 1.0 / opnorm(p.block(a, b));
      if (dist[a] + w < dist[b]) {
        dist[b] = dist[a] + w;
        prev[b] = a;
      }
    }
  }
  GeodesicBound g;
  g.length = dist[j];
  g.connected = dist[j] < kInfinity;
  if (g.connected) {
    for (int v = j; v >= 0; v = prev[v]) g.path.push_back(v);
    std::reverse(g.path.begin(), g.path.end());
  }
  return g;
}

// ------------------------------------------------------- barrier method

namespace {

// Returns false when v lies outside the domain. g and h may be null.
using Barrier = std::function<bool(const RVector& v, double& f, RVector* g, RMatrix* h)>;

struct IpmOutcome {
  RVector v;
  int newton = 0;
  double gap = 0.0;
};

// Maximizes c.v over the domain of a self-concordant barrier with parameter nu,
// starting from the strictly feasible v.
IpmOutcome maximize_linear(const RVector& c, RVector v, double nu, const Barrier& phi,
                           double t, double tol, double floor) {
  IpmOutcome out;
  const int max_outer = 80;
  for (int outer = 0; outer < max_outer; ++outer) {
    for (int inner = 0; inner < 200; ++inner) {
      double f;
      RVector g;
      RMatrix h;
      phi(v, f, &g, &h);
      RVector grad = g - t * c;
      Eigen::LDLT<RMatrix> ldlt(h);
      RVector dv = -ldlt.solve(grad);
      double dec = -grad.dot(dv);
      ++out.newton;
      if (!(dec >= 0.0) || !dv.allFinite()) break;
      if (dec < 1e-14) break;
      double F = f - t * c.dot(v);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        RVector trial = v + step * dv;
        double ft;
        if (phi(trial, ft, nullptr, nullptr) && ft - t * c.dot(trial) <= F - 0.25 * step * dec) {
          v = trial;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved || dec < 1e-10) break;
    }
    out.gap = nu / t;
    if (out.gap <= tol * std::max(std::abs(c.dot(v)), floor)) break;
    t *= 8.0;
  }
  out.v = v;
  return out;
}

// Logdet barrier of I - H and I + H; false when either factor is not positive definite.
bool two_sided(const CMatrix& H, const std::vector<CMatrix>& G, double& f, RVector* g, RMatrix* h) {
  const Eigen::Index n = H.rows();
  CMatrix I = CMatrix::Identity(n, n);
  f = 0.0;
  std::array<CMatrix, 2> W;
  for (int s = 0; s < 2; ++s) {
    CMatrix A = s == 0 ? CMatrix(I - H) : CMatrix(I + H);
    Eigen::LLT<CMatrix> llt(A);
    if (llt.info() != Eigen::Success) return false;
    CMatrix L = llt.matrixL();
    for (Eigen::Index k = 0; k < n; ++k) {
      double d = L(k, k).real();
      if (!(d > 0.0)) return false;
      f -= 2.0 * std::log(d);
    }
    if (g || h) W[s] = llt.solve(I);
  }
  if (!g && !h) return true;
  const size_t m = G.size();
  std::array<std::vector<CMatrix>, 2> WG;
  for (int s = 0; s < 2; ++s)
    for (size_t k = 0; k < m; ++k) WG[s].push_back(W[s] * G[k]);
  if (g) {
    g->resize(m);
    for (size_t k = 0; k < m; ++k) (*g)(k) = WG[0][k].trace().real() - WG[1][k].trace().real();
  }
  if (h) {
    h->resize(m, m);
    for (size_t k = 0; k < m; ++k)
      for (size_t l = k; l < m; ++l) {
        double v = 0.0;
        for (int s = 0; s < 2; ++s)
          v += (WG[s][k].cwiseProduct(WG[s][l].transpose())).sum().real();
        (*h)(k, l) = (*h)(l, k) = v;
      }
  }
  return true;
}

}  // namespace

DistanceResult distance_numeric(const DistanceProblem& p, int i, int j, double tol) {
  DistanceProblem q = p;
  q.i = i;
  q.j = j;
  return distance_numeric(q, tol);
}

DistanceResult distance_numeric(const DistanceProblem& p, double tol) {
  p.validate();
  if (!(tol > 0.0) || tol > 1e-3) throw InputError("distance_numeric: tol must lie in (0, 1e-3]");
  DistanceResult r;
  r.x = RVector::Zero(p.points());
  if (p.i == p.j) return r;
  auto label = link_components(p);
  if (label[p.i] != label[p.j]) {
    r.value = kInfinity;
    r.infinite = true;
    return r;
  }
  // Variables: the points of the component except j, which is pinned at zero.
  std::vector<int> comp, var;
  for (int a = 0; a < p.points(); ++a)
    if (label[a] == label[p.i]) comp.push_back(a);
  std::vector<int> off(comp.size() + 1, 0);
  for (size_t k = 0; k < comp.size(); ++k) off[k + 1] = off[k] + p.dims[comp[k]];
  const int n = off.back();
  CMatrix delta = CMatrix::Zero(n, n);
  for (size_t a = 0; a < comp.size(); ++a)
    for (size_t b = 0; b < comp.size(); ++b)
      if (a != b) delta.block(off[a], off[b], p.dims[comp[a]], p.dims[comp[b]]) = p.block(comp[a], comp[b]);
  std::vector<CMatrix> G;
  int target = -1;
  for (size_t k = 0; k < comp.size(); ++k) {
    if (comp[k] == p.j) continue;
    if (comp[k] == p.i) target = static_cast<int>(var.size());
    var.push_back(static_cast<int>(k));
    CMatrix E = CMatrix::Zero(n, n);
    E.block(off[k], off[k], p.dims[comp[k]], p.dims[comp[k]]).setIdentity();
    G.push_back(kI * (delta * E - E * delta));
  }
  auto H_of = [&](const RVector& v) {
    CMatrix H = CMatrix::Zero(n, n);
    for (size_t k = 0; k < G.size(); ++k) H += v(k) * G[k];
    return H;
  };
  Barrier phi = [&](const RVector& v, double& f, RVector* g, RMatrix* h) {
    return two_sided(H_of(v), G, f, g, h);
  };
  RVector c = RVector::Zero(static_cast<Eigen::Index>(var.size()));
  c(target) = 1.0;
  double nu = 2.0 * n;
  double L = geodesic_bound(p, p.i, p.j).length;
  auto out = maximize_linear(c, RVector::Zero(c.size()), nu, phi, nu / L, tol, 1e-3 * L);
  for (size_t k = 0; k < var.size(); ++k) r.x(comp[var[k]]) = out.v(k);
  r.value = r.x(p.i) - r.x(p.j);
  r.iterations = out.newton;
  r.gap = out.gap;
  r.constraint = opnorm(H_of(out.v));
  return r;
}

// ------------------------------------------------------- closed forms

std::array<double, 3> distance_three_point(double d12, double d13, double d23) {
  if (d12 < 0 || d13 < 0 || d23 < 0) throw InputError("distance_three_point: couplings must be nonnegative");
  double a = d12 * d12, b = d13 * d13, c = d23 * d23;
  double den = b * c + c * a + a * b;
  if (a == 0 && b == 0 && c == 0) return {kInfinity, kInfinity, kInfinity};
  if (den == 0) {
    // Exactly one link survives.
    std::array<double, 3> out{kInfinity, kInfinity, kInfinity};
    if (a > 0) out[0] = 1.0 / d12;
    if (b > 0) out[1] = 1.0 / d13;
    if (c > 0) out[2] = 1.0 / d23;
    return out;
  }
  return {std::sqrt((b + c) / den), std::sqrt((a + c) / den), std::sqrt((a + b) / den)};
}

std::array<double, 3> deltas_from_distances(double d12, double d13, double d23) {
  if (!(d12 > 0 && d13 > 0 && d23 > 0))
    throw InputError("deltas_from_distances: distances must be positive");
  double a = d12 * d12, b = d13 * d13, c = d23 * d23;
  if (a > b + c || b > a + c || c > a + b)
    throw InputError("deltas_from_distances: not realizable, squared triangle inequality fails");
  // Star resistances r_i with d_ij^2 = r_i + r_j.
  double r1 = 0.5 * (a + b - c), r2 = 0.5 * (a + c - b), r3 = 0.5 * (b + c - a);
  double s = r1 * r2 + r1 * r3 + r2 * r3;
  // Delta_ij^2 = 1 / R_ij with R_ij = s / r_k; a vanishing r_k removes that link.
  return {std::sqrt(r3 / s), std::sqrt(r2 / s), std::sqrt(r1 / s)};
}

double distance_chain4(double delta12, double delta23, double delta34) {
  if (delta12 < 0 || delta23 < 0 || delta34 < 0)
    throw InputError("distance_chain4: couplings must be nonnegative");
  if (delta12 == 0 || delta23 == 0 || delta34 == 0) return kInfinity;
  double a = delta12, b = delta23, c = delta34;
  double a2 = a * a, b2 = b * b, c2 = c * c;
  // Strong middle link: both end constraints saturate.
  if (b2 >= a * c) return 1.0 / a + 1.0 / c;
  double sa = std::sqrt(a2 + b2), sc = std::sqrt(c2 + b2);
  return b / (a * c) * (sc / sa + sa / sc + (a2 * c2 - b2 * b2) / (b2 * sa * sc));
}

double chain_uniform(int n, double L) {
  if (n < 2) throw InputError("chain_uniform: n must be at least 2");
  if (n % 2 == 0) return n * L / 2.0;
  return std::sqrt(static_cast<double>(n - 1) * (n + 1)) * L / 2.0;
}

DistanceProblem chain_problem(const std::vector<double>& links) {
  RMatrix d = RMatrix::Zero(links.size() + 1, links.size() + 1);
  for (size_t k = 0; k < links.size(); ++k) d(k, k + 1) = d(k + 1, k) = links[k];
  auto p = DistanceProblem::scalar(d);
  p.i = 0;
  p.j = static_cast<int>(links.size());
  return p;
}

DistanceProblem lattice_dirac(int N, double L) {
  if (N < 2) throw InputError("lattice_dirac: N must be at least 2");
  if (!(L > 0)) throw InputError("lattice_dirac: L must be positive");
  DistanceProblem p;
  p.dims.assign(N, 2);
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 1) = 1.0 / L;
  for (int k = 0; k + 1 < N; ++k) p.blocks[{k, k + 1}] = b;
  p.i = 0;
  p.j = N - 1;
  return p;
}

// ----------------------------------------------------------- M_n + C

namespace {

CVector unit_state(const CVector& v, const char* who) {
  double n = v.norm();
  if (!(n > 0)) throw InputError(std::string(who) + ": zero state vector");
  return v / n;
}

}  // namespace

double distance_mn_plus_c(const CVector& m, const MnState& a, const MnState& b) {
  double mn = m.norm();
  if (mn == 0.0) return (a.point && b.point) ? 0.0 : kInfinity;
  CVector u = m / mn;
  if (a.point && b.point) return 0.0;
  if (a.point || b.point) {
    CVector xi = unit_state(a.point ? b.xi : a.xi, "distance_mn_plus_c");
    if (xi.size() != m.size()) throw InputError("distance_mn_plus_c: state dimension mismatch");
    return std::abs(std::abs(u.dot(xi)) - 1.0) <= kMnGateTol ? 1.0 / mn : kInfinity;
  }
  CVector xi = unit_state(a.xi, "distance_mn_plus_c");
  CVector ze = unit_state(b.xi, "distance_mn_plus_c");
  if (xi.size() != m.size() || ze.size() != m.size())
    throw InputError("distance_mn_plus_c: state dimension mismatch");
  // Finite iff the components orthogonal to m define the same rank-one matrix;
  // for n = 2 this is equality of the overlaps with m.
  CVector xp = xi - u * u.dot(xi), zp = ze - u * u.dot(ze);
  CMatrix diff = xp * xp.adjoint() - zp * zp.adjoint();
  if (diff.cwiseAbs().maxCoeff() > kMnGateTol) return kInfinity;
  double ov = std::abs(xi.dot(ze));
  return 2.0 / mn * std::sqrt(std::max(0.0, 1.0 - ov * ov));
}

double distance_mn_plus_c_numeric(const CVector& m, const MnState& a, const MnState& b, double box) {
  const int n = static_cast<int>(m.size());
  if (n < 1 || n > 3) throw InputError("distance_mn_plus_c_numeric: n must lie in 1..3");
  if (a.point && b.point) return 0.0;
  // Objective tr(z P) with z = x - y.
  CMatrix P = CMatrix::Zero(n, n);
  if (!a.point) {
    CVector v = unit_state(a.xi, "distance_mn_plus_c_numeric");
    P += v * v.adjoint();
  }
  if (!b.point) {
    CVector v = unit_state(b.xi, "distance_mn_plus_c_numeric");
    P -= v * v.adjoint();
  }
  // Real basis of Hermitian n x n matrices.
  std::vector<CMatrix> B;
  for (int r = 0; r < n; ++r) {
    CMatrix e = CMatrix::Zero(n, n);
    e(r, r) = 1.0;
    B.push_back(e);
    for (int s = r + 1; s < n; ++s) {
      CMatrix re = CMatrix::Zero(n, n), im = CMatrix::Zero(n, n);
      re(r, s) = re(s, r) = 1.0;
      im(r, s) = kI;
      im(s, r) = -kI;
      B.push_back(re);
      B.push_back(im);
    }
  }
  const int k = static_cast<int>(B.size());
  RVector c(k);
  CMatrix Lm(n, k);
  RMatrix QF(k, k);
  for (int s = 0; s < k; ++s) {
    c(s) = (B[s] * P).trace().real();
    Lm.col(s) = B[s] * m;
  }
  for (int s = 0; s < k; ++s)
    for (int t = 0; t < k; ++t) QF(s, t) = (B[s] * B[t]).trace().real();
  RMatrix Qm = (Lm.adjoint() * Lm).real();
  double R2 = box * box;
  Barrier phi = [&](const RVector& v, double& f, RVector* g, RMatrix* h) {
    double q1 = v.dot(Qm * v), q2 = v.dot(QF * v);
    double s1 = 1.0 - q1, s2 = R2 - q2;
    if (!(s1 > 0) || !(s2 > 0)) return false;
    f = -std::log(s1) - std::log(s2);
    RVector u1 = Qm * v, u2 = QF * v;
    if (g) *g = 2.0 * u1 / s1 + 2.0 * u2 / s2;
    if (h) *h = 2.0 * Qm / s1 + 4.0 * u1 * u1.transpose() / (s1 * s1) + 2.0 * QF / s2 +
                4.0 * u2 * u2.transpose() / (s2 * s2);
    return true;
  };
  if (c.norm() == 0.0) return 0.0;
  auto out = maximize_linear(c, RVector::Zero(k), 2.0, phi, 1.0, 1e-10, 1e-6);
  double value = c.dot(out.v);
  if (value > 1e-2 * box) return kInfinity;
  return value;
}

}  // namespace ncg
