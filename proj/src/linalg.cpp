// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ncg/errors.hpp"

namespace ncg {

namespace {

void require_finite(const CMatrix& m, const char* who) {
  if (!m.allFinite()) throw InputError(std::string(who) + ": non-finite entry");
}

std::atomic<int> g_worker_override{0};

}  // namespace

int worker_count() {
  if (int o = g_worker_override.load(); o > 0) return o;
  if (const char* env = std::getenv("NCG_FORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(int n) { g_worker_override.store(n > 0 ? n : 0); }

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double opnorm(const CMatrix& m) {
  require_finite(m, "opnorm");
  if (m.size() == 0) return 0.0;
  // Work with the smaller Gram matrix.
  CMatrix g = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  g = 0.5 * (g + g.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

EigenDecomposition hermitian_eigen(const CMatrix& m, double tol) {
  require_finite(m, "hermitian_eigen");
  if (m.rows() != m.cols()) throw InputError("hermitian_eigen: matrix is not square");
  if (m.size() == 0) return {};
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff()))
    throw InputError("hermitian_eigen: matrix is not Hermitian");
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> nd;
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
  CMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint());
}

CMatrix random_unitary(std::mt19937_64& rng, int n) {
  CMatrix m = random_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ();
  // Fix column phases so the distribution is Haar.
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix pauli(int k) {
  CMatrix s = CMatrix::Zero(2, 2);
  switch (k) {
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = -kI; s(1, 0) = kI; break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw InputError("pauli: index must be 1, 2 or 3");
  }
  return s;
}

// ---------------------------------------------------------------- Grassmann

GrassmannPoly::GrassmannPoly(int generators) : gens_(generators) {
  if (generators < 0 || generators > kMaxGenerators)
    throw CapacityError("GrassmannPoly: at most 24 generators are supported");
}

GrassmannPoly GrassmannPoly::scalar(int generators, cplx c) {
  GrassmannPoly p(generators);
  p.add_term(0, c);
  return p;
}

GrassmannPoly GrassmannPoly::generator(int generators, int k, cplx c) {
  GrassmannPoly p(generators);
  if (k < 0 || k >= generators) throw CapacityError("GrassmannPoly: generator index out of range");
  p.add_term(Mask(1) << k, c);
  return p;
}

cplx GrassmannPoly::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

bool GrassmannPoly::is_zero(double tol) const { return max_abs() <= tol; }

double GrassmannPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : terms_) m = std::max(m, std::abs(v));
  return m;
}

void GrassmannPoly::add_term(Mask m, cplx c) {
  if (c == cplx(0.0)) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

GrassmannPoly& GrassmannPoly::operator+=(const GrassmannPoly& o) {
  if (o.gens_ != gens_) throw InputError("GrassmannPoly: generator counts differ");
  for (const auto& [k, v] : o.terms_) add_term(k, v);
  return *this;
}

GrassmannPoly& GrassmannPoly::operator-=(const GrassmannPoly& o) {
  if (o.gens_ != gens_) throw InputError("GrassmannPoly: generator counts differ");
  for (const auto& [k, v] : o.terms_) add_term(k, -v);
  return *this;
}

GrassmannPoly& GrassmannPoly::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

GrassmannPoly GrassmannPoly::operator-() const {
  GrassmannPoly r = *this;
  r *= -1.0;
  return r;
}

GrassmannPoly GrassmannPoly::left_coefficient(int k) const {
  GrassmannPoly r(gens_);
  const Mask bit = Mask(1) << k;
  const Mask below = bit - 1;
  for (const auto& [m, v] : terms_) {
    if (!(m & bit)) continue;
    // Moving g_k to the front passes every generator with a smaller index.
    int s = (std::popcount(m & below) % 2) ? -1 : 1;
    r.add_term(m & ~bit, double(s) * v);
  }
  return r;
}

GrassmannPoly GrassmannPoly::drop_generator(int k) const {
  GrassmannPoly r(gens_);
  const Mask bit = Mask(1) << k;
  for (const auto& [m, v] : terms_)
    if (!(m & bit)) r.add_term(m, v);
  return r;
}

void GrassmannPoly::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol) it = terms_.erase(it);
    else ++it;
  }
}

int grassmann_sign(GrassmannPoly::Mask a, GrassmannPoly::Mask b) {
  int swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps % 2) ? -1 : 1;
}

GrassmannPoly gr_mul(const GrassmannPoly& x, const GrassmannPoly& y) {
  if (x.generators() != y.generators())
    throw InputError("gr_mul: generator counts differ");
  GrassmannPoly r(x.generators());
  for (const auto& [ma, va] : x.terms())
    for (const auto& [mb, vb] : y.terms()) {
      if (ma & mb) continue;
      r.add_term(ma | mb, double(grassmann_sign(ma, mb)) * va * vb);
    }
  return r;
}

GrassmannPoly operator+(GrassmannPoly a, const GrassmannPoly& b) { return a += b; }
GrassmannPoly operator-(GrassmannPoly a, const GrassmannPoly& b) { return a -= b; }
GrassmannPoly operator*(cplx c, GrassmannPoly a) { return a *= c; }

}  // namespace ncg
