// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "ncg/errors.hpp"

namespace ncg {

// ------------------------------------------------------------------ modes

Mode make_mode(const std::vector<int>& p) {
  if (p.size() > static_cast<size_t>(kMaxTorusDim))
    throw DimensionError("mode: dimension exceeds " + std::to_string(kMaxTorusDim));
  Mode m{};
  std::copy(p.begin(), p.end(), m.begin());
  return m;
}

std::vector<int> mode_vector(const Mode& p, int n) { return {p.begin(), p.begin() + n}; }

Mode operator+(const Mode& a, const Mode& b) {
  Mode m;
  for (int i = 0; i < kMaxTorusDim; ++i) m[i] = a[i] + b[i];
  return m;
}

Mode operator-(const Mode& a) {
  Mode m;
  for (int i = 0; i < kMaxTorusDim; ++i) m[i] = -a[i];
  return m;
}

bool is_zero_mode(const Mode& p) {
  return std::all_of(p.begin(), p.end(), [](int v) { return v == 0; });
}

// ------------------------------------------------------------------ theta

Theta::Theta(const RMatrix& theta) : n_(static_cast<int>(theta.rows())), theta_(theta) {
  if (theta.rows() != theta.cols()) throw InputError("theta: matrix must be square");
  if (n_ < 1 || n_ > kMaxTorusDim)
    throw DimensionError("theta: dimension must lie in 1.." + std::to_string(kMaxTorusDim));
  if (!theta.allFinite()) throw InputError("theta: non-finite entry");
  if ((theta + theta.transpose()).cwiseAbs().maxCoeff() > 1e-14)
    throw InputError("theta: matrix is not antisymmetric");
}

std::shared_ptr<const Theta> Theta::make(const RMatrix& theta) {
  return std::make_shared<const Theta>(theta);
}

std::shared_ptr<const Theta> Theta::zero(int n) { return make(RMatrix::Zero(n, n)); }

std::shared_ptr<const Theta> Theta::blocks(int n, const std::vector<double>& t) {
  RMatrix m = RMatrix::Zero(n, n);
  if (2 * t.size() > static_cast<size_t>(n)) throw InputError("theta: too many blocks");
  for (size_t k = 0; k < t.size(); ++k) {
    m(2 * k, 2 * k + 1) = t[k];
    m(2 * k + 1, 2 * k) = -t[k];
  }
  return make(m);
}

double Theta::operator()(const Mode& p, const Mode& q) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    if (p[i] == 0) continue;
    for (int j = 0; j < n_; ++j)
      if (q[j] != 0) s += p[i] * theta_(i, j) * q[j];
  }
  return s;
}

cplx Theta::phase(const Mode& p, const Mode& q) const { return std::polar(1.0, kPi * (*this)(p, q)); }

double Theta::sin_phase(const Mode& p, const Mode& q) const { return std::sin(kPi * (*this)(p, q)); }

bool Theta::same(const Theta& o) const {
  return n_ == o.n_ && (theta_ - o.theta_).cwiseAbs().maxCoeff() == 0.0;
}

void require_same_theta(const ThetaPtr& a, const ThetaPtr& b, const char* who) {
  if (!a || !b) throw InputError(std::string(who) + ": missing theta context");
  if (a != b && !a->same(*b)) throw InputError(std::string(who) + ": theta mismatch");
}

// ------------------------------------------------------------------ NCPoly

NCPoly::NCPoly(ThetaPtr theta) : theta_(std::move(theta)) {
  if (!theta_) throw InputError("NCPoly: missing theta context");
}

NCPoly NCPoly::scalar(ThetaPtr theta, cplx c) { return monomial(std::move(theta), Mode{}, c); }

NCPoly NCPoly::monomial(ThetaPtr theta, const Mode& p, cplx c) {
  NCPoly a(std::move(theta));
  a.add_term(p, c);
  return a;
}

int NCPoly::n() const { return theta_ ? theta_->n() : 0; }

cplx NCPoly::coeff(const Mode& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void NCPoly::add_term(const Mode& p, cplx c) {
  if (c == cplx(0.0)) return;
  for (int i = n(); i < kMaxTorusDim; ++i)
    if (p[i] != 0) throw DimensionError("NCPoly: mode has entries beyond the torus dimension");
  auto [it, fresh] = terms_.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
  if (terms_.size() > kMaxSupport) throw CapacityError("NCPoly: support exceeds 10^6 modes");
}

void NCPoly::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::abs(it->second) < tol ? terms_.erase(it) : std::next(it);
}

bool NCPoly::is_zero(double tol) const { return max_abs() <= tol; }

double NCPoly::max_abs() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double NCPoly::l1_norm() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m += std::abs(c);
  return m;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  if (!theta_) theta_ = o.theta_;
  require_same_theta(theta_, o.theta_, "NCPoly +");
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  if (!theta_) theta_ = o.theta_;
  require_same_theta(theta_, o.theta_, "NCPoly -");
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
NCPoly operator*(cplx c, NCPoly a) { return a *= c; }

namespace {

struct ModeHash {
  std::size_t operator()(const Mode& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : p) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(v))) * 1099511628211ull;
    return h;
  }
};

}  // namespace

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
  require_same_theta(a.theta(), b.theta(), "nc_mul");
  const Theta& th = *a.theta();
  const int n = th.n();
  // theta q for every right mode, so each phase is one short dot product.
  std::vector<std::pair<const Mode*, cplx>> right;
  std::vector<std::array<double, kMaxTorusDim>> tq;
  right.reserve(b.size());
  tq.reserve(b.size());
  for (const auto& [q, y] : b.terms()) {
    right.emplace_back(&q, y);
    std::array<double, kMaxTorusDim> v{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i] += th.matrix()(i, j) * q[j];
    tq.push_back(v);
  }
  std::unordered_map<Mode, cplx, ModeHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& [p, x] : a.terms())
    for (std::size_t k = 0; k < right.size(); ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += p[i] * tq[k][i];
      acc[p + *right[k].first] += x * right[k].second * std::polar(1.0, kPi * s);
    }
  NCPoly out(a.theta());
  for (const auto& [p, c] : acc)
    if (std::abs(c) >= kPruneTol) out.add_term(p, c);
  return out;
}

NCPoly nc_star(const NCPoly& a) {
  NCPoly out(a.theta());
  for (const auto& [p, c] : a.terms()) out.add_term(-p, std::conj(c));
  return out;
}

cplx nc_trace(const NCPoly& a) { return a.coeff(Mode{}); }

NCPoly nc_derive(const NCPoly& a, int mu) {
  if (mu < 0 || mu >= a.n()) throw InputError("nc_derive: direction out of range");
  NCPoly out(a.theta());
  for (const auto& [p, c] : a.terms())
    if (p[mu] != 0) out.add_term(p, c * cplx(0.0, 2.0 * kPi * p[mu]));
  return out;
}

NCPoly nc_comm(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b) - nc_mul(b, a); }

bool center_test(const Mode& p, const Theta& theta, double tol) {
  for (int j = 0; j < theta.n(); ++j) {
    double s = 0.0;
    for (int i = 0; i < theta.n(); ++i) s += p[i] * theta.matrix()(i, j);
    if (std::abs(s - std::round(s)) > tol) return false;
  }
  return true;
}

bool modular_compatible(const IMatrix& M, const Theta& theta, double tol) {
  if (M.rows() != theta.n() || M.cols() != theta.n())
    throw InputError("modular_compatible: matrix size does not match theta");
  RMatrix m = M.cast<double>();
  RMatrix d = m.transpose() * theta.matrix() * m - theta.matrix();
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (std::abs(d(i) - std::round(d(i))) > tol) return false;
  return true;
}

NCPoly random_ncpoly(ThetaPtr theta, std::mt19937_64& rng, int terms, int radius) {
  NCPoly a(theta);
  std::uniform_int_distribution<int> ud(-radius, radius);
  std::normal_distribution<double> nd;
  for (int t = 0; t < terms; ++t) {
    Mode p{};
    for (int i = 0; i < theta->n(); ++i) p[i] = ud(rng);
    a.add_term(p, cplx(nd(rng), nd(rng)));
  }
  return a;
}

// --------------------------------------------------------------- MatNCPoly

MatNCPoly::MatNCPoly(ThetaPtr theta, int N) : theta_(theta), N_(N) {
  if (N < 1) throw InputError("MatNCPoly: size must be positive");
  entries_.assign(static_cast<size_t>(N) * N, NCPoly(theta));
}

MatNCPoly MatNCPoly::identity(ThetaPtr theta, int N) {
  MatNCPoly m(theta, N);
  for (int i = 0; i < N; ++i) m(i, i) = NCPoly::scalar(theta, 1.0);
  return m;
}

MatNCPoly MatNCPoly::from_scalar(const NCPoly& a) {
  MatNCPoly m(a.theta(), 1);
  m(0, 0) = a;
  return m;
}

MatNCPoly MatNCPoly::constant(ThetaPtr theta, const CMatrix& c) {
  if (c.rows() != c.cols()) throw InputError("MatNCPoly: constant matrix must be square");
  MatNCPoly m(theta, static_cast<int>(c.rows()));
  for (int i = 0; i < m.N_; ++i)
    for (int j = 0; j < m.N_; ++j) m(i, j) = NCPoly::scalar(theta, c(i, j));
  return m;
}

static void require_same_shape(const MatNCPoly& a, const MatNCPoly& b, const char* who) {
  require_same_theta(a.theta(), b.theta(), who);
  if (a.size() != b.size()) throw InputError(std::string(who) + ": matrix sizes differ");
}

MatNCPoly& MatNCPoly::operator+=(const MatNCPoly& o) {
  require_same_shape(*this, o, "MatNCPoly +");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatNCPoly& MatNCPoly::operator-=(const MatNCPoly& o) {
  require_same_shape(*this, o, "MatNCPoly -");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatNCPoly& MatNCPoly::operator*=(cplx c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

double MatNCPoly::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs());
  return m;
}

double MatNCPoly::l1_norm() const {
  double m = 0.0;
  for (const auto& e : entries_) m += e.l1_norm();
  return m;
}

bool MatNCPoly::is_zero(double tol) const { return max_abs() <= tol; }

void MatNCPoly::prune(double tol) {
  for (auto& e : entries_) e.prune(tol);
}

MatNCPoly operator+(MatNCPoly a, const MatNCPoly& b) { return a += b; }
MatNCPoly operator-(MatNCPoly a, const MatNCPoly& b) { return a -= b; }
MatNCPoly operator*(cplx c, MatNCPoly a) { return a *= c; }

MatNCPoly mat_mul(const MatNCPoly& a, const MatNCPoly& b) {
  require_same_shape(a, b, "mat_mul");
  const int N = a.size();
  MatNCPoly out(a.theta(), N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        if (a(i, k).size() == 0 || b(k, j).size() == 0) continue;
        out(i, j) += nc_mul(a(i, k), b(k, j));
      }
  out.prune();
  return out;
}

MatNCPoly adjoint(const MatNCPoly& a) {
  MatNCPoly out(a.theta(), a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out(i, j) = nc_star(a(j, i));
  return out;
}

MatNCPoly derive(const MatNCPoly& a, int mu) {
  MatNCPoly out(a.theta(), a.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) out(i, j) = nc_derive(a(i, j), mu);
  return out;
}

MatNCPoly comm(const MatNCPoly& a, const MatNCPoly& b) { return mat_mul(a, b) - mat_mul(b, a); }

cplx trace_integral(const MatNCPoly& a) {
  cplx s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += nc_trace(a(i, i));
  return s;
}

double hermitian_defect(const MatNCPoly& a) { return (a - adjoint(a)).max_abs(); }
double antihermitian_defect(const MatNCPoly& a) { return (a + adjoint(a)).max_abs(); }

MatNCPoly random_antihermitian(ThetaPtr theta, int N, std::mt19937_64& rng, int terms, int radius) {
  MatNCPoly x(theta, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) x(i, j) = random_ncpoly(theta, rng, terms, radius);
  return x - adjoint(x);
}

// ------------------------------------------------------------------ forms

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

int permutation_sign(const std::vector<int>& idx) {
  int sign = 1;
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] > idx[b]) sign = -sign;
    }
  return sign;
}

NCForm::NCForm(ThetaPtr theta, int N, int degree) : theta_(theta), N_(N), p_(degree) {
  if (!theta) throw InputError("NCForm: missing theta context");
  if (degree < 0 || degree > theta->n()) throw DimensionError("NCForm: degree exceeds the dimension");
  for (const auto& c : combinations(theta->n(), degree)) comps_[c] = MatNCPoly(theta, N);
}

int NCForm::n() const { return theta_->n(); }

MatNCPoly NCForm::get(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != p_) throw InputError("NCForm: wrong number of indices");
  int s = permutation_sign(idx);
  if (s == 0) return MatNCPoly(theta_, N_);
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  auto it = comps_.find(sorted);
  if (it == comps_.end()) throw InputError("NCForm: index out of range");
  return s > 0 ? it->second : cplx(-1.0) * it->second;
}

void NCForm::set(const std::vector<int>& idx, const MatNCPoly& v) {
  if (static_cast<int>(idx.size()) != p_) throw InputError("NCForm: wrong number of indices");
  int s = permutation_sign(idx);
  if (s == 0) throw InputError("NCForm: repeated index");
  std::vector<int> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  auto it = comps_.find(sorted);
  if (it == comps_.end()) throw InputError("NCForm: index out of range");
  require_same_shape(it->second, v, "NCForm::set");
  it->second = s > 0 ? v : cplx(-1.0) * v;
}

double NCForm::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : comps_) m = std::max(m, v.max_abs());
  return m;
}

NCForm wedge(const NCForm& a, const NCForm& b) {
  require_same_theta(a.theta(), b.theta(), "wedge");
  if (a.size() != b.size()) throw InputError("wedge: matrix sizes differ");
  const int p = a.degree(), q = b.degree(), n = a.n();
  if (p + q > n) throw DimensionError("wedge: total degree exceeds the dimension");
  NCForm out(a.theta(), a.size(), p + q);
  for (const auto& I : combinations(n, p + q)) {
    MatNCPoly acc(a.theta(), a.size());
    for (const auto& sel : combinations(p + q, p)) {
      std::vector<int> J, K, order;
      std::vector<bool> in(p + q, false);
      for (int s : sel) in[s] = true;
      for (int s = 0; s < p + q; ++s) (in[s] ? J : K).push_back(I[s]);
      order = J;
      order.insert(order.end(), K.begin(), K.end());
      int sign = permutation_sign(order);
      MatNCPoly term = mat_mul(a.get(J), b.get(K));
      acc += sign > 0 ? term : cplx(-1.0) * term;
    }
    out.set(I, acc);
  }
  return out;
}

NCForm ext_d(const NCForm& a) {
  const int p = a.degree(), n = a.n();
  if (p >= n) throw DimensionError("ext_d: top-degree form has no exterior derivative");
  NCForm out(a.theta(), a.size(), p + 1);
  for (const auto& I : combinations(n, p + 1)) {
    MatNCPoly acc(a.theta(), a.size());
    for (int k = 0; k <= p; ++k) {
      std::vector<int> rest;
      for (int s = 0; s <= p; ++s)
        if (s != k) rest.push_back(I[s]);
      MatNCPoly term = derive(a.get(rest), I[k]);
      acc += (k % 2 == 0) ? term : cplx(-1.0) * term;
    }
    out.set(I, acc);
  }
  return out;
}

NCForm hodge(const NCForm& a) {
  const int p = a.degree(), n = a.n();
  NCForm out(a.theta(), a.size(), n - p);
  for (const auto& J : combinations(n, n - p)) {
    std::vector<int> I;
    for (int s = 0; s < n; ++s)
      if (std::find(J.begin(), J.end(), s) == J.end()) I.push_back(s);
    std::vector<int> order = I;
    order.insert(order.end(), J.begin(), J.end());
    int sign = permutation_sign(order);
    MatNCPoly v = a.get(I);
    out.set(J, sign > 0 ? v : cplx(-1.0) * v);
  }
  return out;
}

cplx form_integral(const NCForm& a) {
  if (a.degree() != a.n()) return 0.0;
  std::vector<int> top(a.n());
  std::iota(top.begin(), top.end(), 0);
  return trace_integral(a.get(top));
}

NCForm random_form(ThetaPtr theta, int N, int degree, std::mt19937_64& rng, int terms, int radius) {
  NCForm f(theta, N, degree);
  for (const auto& I : combinations(theta->n(), degree)) {
    MatNCPoly m(theta, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m(i, j) = random_ncpoly(theta, rng, terms, radius);
    f.set(I, m);
  }
  return f;
}

// ------------------------------------------------------------ connections

namespace {

void check_connection(const Connection& A) {
  if (A.empty()) throw InputError("connection: no components");
  const int n = A.front().theta()->n();
  if (static_cast<int>(A.size()) != n)
    throw DimensionError("connection: need one component per torus direction");
  for (const auto& a : A) require_same_shape(A.front(), a, "connection");
}

void check_projector(const MatNCPoly& e, double tol) {
  if (hermitian_defect(e) > tol) throw InvariantError("projector: e is not self-adjoint");
  if ((mat_mul(e, e) - e).l1_norm() > tol) throw InvariantError("projector: e^2 != e");
}

MatNCPoly sandwich(const MatNCPoly& e, const MatNCPoly& x) { return mat_mul(mat_mul(e, x), e); }

// e A e, or A when no projector is given.
Connection reduced(const Connection& A, const std::optional<MatNCPoly>& e) {
  if (!e) return A;
  Connection out;
  for (const auto& a : A) out.push_back(sandwich(*e, a));
  return out;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(idx);
  while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace

FieldStrength curvature(const Connection& A, const std::optional<MatNCPoly>& e, double g, double tol) {
  check_connection(A);
  const int n = static_cast<int>(A.size());
  const auto& th = A.front().theta();
  const int N = A.front().size();
  if (e) {
    require_same_shape(A.front(), *e, "curvature");
    check_projector(*e, tol);
  }
  Connection Ae = reduced(A, e);
  std::vector<MatNCPoly> de;
  if (e)
    for (int mu = 0; mu < n; ++mu) de.push_back(derive(*e, mu));
  FieldStrength F(n, std::vector<MatNCPoly>(n, MatNCPoly(th, N)));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      MatNCPoly f(th, N);
      if (e) {
        f += mat_mul(*e, mat_mul(de[mu], de[nu])) - mat_mul(*e, mat_mul(de[nu], de[mu]));
        f += sandwich(*e, derive(Ae[nu], mu)) - sandwich(*e, derive(Ae[mu], nu));
      } else {
        f += derive(A[nu], mu) - derive(A[mu], nu);
      }
      f += cplx(g) * comm(Ae[mu], Ae[nu]);
      f.prune();
      F[nu][mu] = cplx(-1.0) * f;
      F[mu][nu] = std::move(f);
    }
  return F;
}

double ym_action(const Connection& A, const std::optional<MatNCPoly>& e, double g, double normalization) {
  auto F = curvature(A, e, g);
  const int n = static_cast<int>(F.size());
  cplx s = 0.0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      if (mu != nu) s += trace_integral(mat_mul(F[mu][nu], F[mu][nu]));
  return -normalization * s.real();
}

std::vector<MatNCPoly> eom_residual(const Connection& A, const std::optional<MatNCPoly>& e, double g) {
  auto F = curvature(A, e, g);
  Connection Ae = reduced(A, e);
  const int n = static_cast<int>(A.size());
  std::vector<MatNCPoly> out;
  for (int nu = 0; nu < n; ++nu) {
    MatNCPoly r(A.front().theta(), A.front().size());
    for (int mu = 0; mu < n; ++mu) {
      MatNCPoly d = derive(F[mu][nu], mu);
      r += e ? sandwich(*e, d) : d;
      r += cplx(g) * comm(Ae[mu], F[mu][nu]);
    }
    r.prune();
    out.push_back(std::move(r));
  }
  return out;
}

double bianchi_residual(const Connection& A, const std::optional<MatNCPoly>& e, double g) {
  auto F = curvature(A, e, g);
  Connection Ae = reduced(A, e);
  const int n = static_cast<int>(A.size());
  auto cov = [&](int l, const MatNCPoly& f) {
    MatNCPoly d = derive(f, l);
    return (e ? sandwich(*e, d) : d) + cplx(g) * comm(Ae[l], f);
  };
  double worst = 0.0;
  for (const auto& I : combinations(n, 3)) {
    int l = I[0], m = I[1], k = I[2];
    MatNCPoly r = cov(l, F[m][k]) + cov(m, F[k][l]) + cov(k, F[l][m]);
    worst = std::max(worst, r.max_abs());
  }
  return worst;
}

namespace {

void check_unitary(const MatNCPoly& u, double tol) {
  MatNCPoly one = MatNCPoly::identity(u.theta(), u.size());
  if ((mat_mul(u, adjoint(u)) - one).l1_norm() > tol || (mat_mul(adjoint(u), u) - one).l1_norm() > tol)
    throw InvariantError("gauge transform: u is not unitary");
}

}  // namespace

Connection gauge_transform(const Connection& A, const MatNCPoly& u, double g, double tol) {
  check_connection(A);
  require_same_shape(A.front(), u, "gauge_transform");
  if (g == 0.0) throw InputError("gauge_transform: coupling must be nonzero");
  check_unitary(u, tol);
  MatNCPoly us = adjoint(u);
  Connection out;
  for (size_t mu = 0; mu < A.size(); ++mu) {
    MatNCPoly a = mat_mul(mat_mul(u, A[mu]), us) + cplx(1.0 / g) * mat_mul(u, derive(us, static_cast<int>(mu)));
    a.prune();
    out.push_back(std::move(a));
  }
  return out;
}

double cs_action(const Connection& A, double k) {
  check_connection(A);
  if (A.size() != 3) throw DimensionError("cs_action: Chern-Simons needs n = 3");
  cplx s = 0.0;
  for (const auto& P : permutations(3)) {
    int sg = permutation_sign(P);
    const auto &Al = A[P[0]], &Am = A[P[1]], &An = A[P[2]];
    MatNCPoly t = mat_mul(Al, derive(An, P[1])) + cplx(2.0 / 3.0) * mat_mul(mat_mul(Al, Am), An);
    s += double(sg) * trace_integral(t);
  }
  return (k / (4.0 * kPi) * s).real();
}

double cs_gauge_defect(const MatNCPoly& u, double k) {
  if (u.theta()->n() != 3) throw DimensionError("cs_gauge_defect: Chern-Simons needs n = 3");
  MatNCPoly us = adjoint(u);
  std::vector<MatNCPoly> w;
  for (int mu = 0; mu < 3; ++mu) w.push_back(mat_mul(us, derive(u, mu)));
  cplx s = 0.0;
  for (const auto& P : permutations(3))
    s += double(permutation_sign(P)) * trace_integral(mat_mul(mat_mul(w[P[0]], w[P[1]]), w[P[2]]));
  return (k / (12.0 * kPi) * s).real();
}

// --------------------------------------------------------------- topology

ChargeReport topological_charge(const MatNCPoly& e) {
  const int n = e.theta()->n();
  ChargeReport r;
  r.c = RMatrix::Zero(n, n);
  std::vector<MatNCPoly> de;
  for (int mu = 0; mu < n; ++mu) de.push_back(derive(e, mu));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      cplx v = trace_integral(mat_mul(e, mat_mul(de[mu], de[nu]) - mat_mul(de[nu], de[mu])));
      r.c(mu, nu) = (v / cplx(0.0, 2.0 * kPi)).real();
      r.c(nu, mu) = -r.c(mu, nu);
    }
  r.trace = trace_integral(e).real();
  r.defect = (mat_mul(e, e) - e).l1_norm();
  // First-order sensitivity of the pairing to a perturbation of size defect.
  double dmax = 0.0;
  for (const auto& d : de) dmax = std::max(dmax, d.l1_norm());
  r.error_bar = r.defect * 3.0 * (1.0 + dmax) * (1.0 + dmax) / (2.0 * kPi);
  if (n == 4) r.q = second_pairing(e);
  return r;
}

double second_pairing(const MatNCPoly& e) {
  if (e.theta()->n() != 4) throw DimensionError("second_pairing: needs n = 4");
  std::vector<MatNCPoly> de;
  for (int mu = 0; mu < 4; ++mu) de.push_back(derive(e, mu));
  cplx s = 0.0;
  for (const auto& P : permutations(4)) {
    MatNCPoly t = e;
    for (int k = 0; k < 4; ++k) t = mat_mul(t, de[P[k]]);
    s += double(permutation_sign(P)) * trace_integral(t);
  }
  cplx twopi_i(0.0, 2.0 * kPi);
  return (s / (2.0 * twopi_i * twopi_i)).real();
}

double second_pairing_product(const MatNCPoly& e1, const std::vector<int>& coords1, const MatNCPoly& e2,
                              const std::vector<int>& coords2) {
  require_same_theta(e1.theta(), e2.theta(), "second_pairing_product");
  if (e1.theta()->n() != 4) throw DimensionError("second_pairing_product: needs n = 4");
  if (coords1.size() != 2 || coords2.size() != 2) throw InputError("second_pairing_product: blocks must be 2D");
  std::vector<int> all = coords1;
  all.insert(all.end(), coords2.begin(), coords2.end());
  {
    std::vector<int> chk = all;
    std::sort(chk.begin(), chk.end());
    for (int k = 0; k < 4; ++k)
      if (chk[k] != k) throw InputError("second_pairing_product: blocks must partition the coordinates");
  }
  const Theta& th = *e1.theta();
  for (int a : coords1)
    for (int b : coords2)
      if (th.matrix()(a, b) != 0.0) throw InputError("second_pairing_product: blocks do not commute");
  auto in = [](const std::vector<int>& c, int mu) { return std::find(c.begin(), c.end(), mu) != c.end(); };
  std::map<int, MatNCPoly> d1, d2;
  for (int mu : coords1) d1[mu] = derive(e1, mu);
  for (int mu : coords2) d2[mu] = derive(e2, mu);
  // Ordered products of each factor, memoized by their derivative pattern.
  std::map<std::vector<int>, cplx> cache1, cache2;
  auto block_trace = [&](const MatNCPoly& e, std::map<int, MatNCPoly>& d, const std::vector<int>& pattern,
                         std::map<std::vector<int>, cplx>& cache) {
    auto it = cache.find(pattern);
    if (it != cache.end()) return it->second;
    MatNCPoly t = e;
    for (int mu : pattern) t = mat_mul(t, mu < 0 ? e : d.at(mu));
    cplx v = trace_integral(t);
    cache[pattern] = v;
    return v;
  };
  cplx s = 0.0;
  for (const auto& P : permutations(4)) {
    std::vector<int> pat1, pat2;
    for (int k = 0; k < 4; ++k) {
      int mu = P[k];
      pat1.push_back(in(coords1, mu) ? mu : -1);
      pat2.push_back(in(coords2, mu) ? mu : -1);
    }
    s += double(permutation_sign(P)) * block_trace(e1, d1, pat1, cache1) * block_trace(e2, d2, pat2, cache2);
  }
  cplx twopi_i(0.0, 2.0 * kPi);
  return (s / (2.0 * twopi_i * twopi_i)).real();
}

namespace {

double bump(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / std::pow(t, 1.5)); }

// Smooth step from 0 at t <= 0 to 1 at t >= 1, with s(t) + s(1 - t) = 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = bump(t), b = bump(1.0 - t);
  return a / (a + b);
}

// g rises on [0, eps], equals 1 up to lambda and falls back on [lambda, lambda + eps];
// f = sqrt(g - g^2) lives on the rising ramp.
struct Profile {
  double lambda, eps;
  double g(double x) const {
    if (x < eps) return smooth_step(x / eps);
    if (x < lambda) return 1.0;
    if (x < lambda + eps) return 1.0 - smooth_step((x - lambda) / eps);
    return 0.0;
  }
  double f(double x) const {
    if (x >= eps) return 0.0;
    double v = g(x);
    return std::sqrt(std::max(0.0, v - v * v));
  }
};

// Fourier coefficients c_k = int_0^1 h(x) e^{-2 pi i k x} dx, |k| <= K.
template <class F>
std::vector<cplx> fourier(F h, int K, int samples) {
  std::vector<double> vals(samples);
  for (int j = 0; j < samples; ++j) vals[j] = h(static_cast<double>(j) / samples);
  std::vector<cplx> out(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    cplx s = 0.0;
    cplx w = std::polar(1.0, -2.0 * kPi * k / samples), z = 1.0;
    for (int j = 0; j < samples; ++j) {
      s += vals[j] * z;
      z *= w;
      if ((j & 1023) == 1023) z = std::polar(1.0, -2.0 * kPi * k * (j + 1) / samples);
    }
    out[k + K] = s / double(samples);
  }
  return out;
}

}  // namespace

NCPoly powers_rieffel_embedded(ThetaPtr theta, int a, int b, double lambda, int K) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("powers_rieffel: lambda must lie in (0, 1)");
  if (K < 1) throw InputError("powers_rieffel: truncation K must be positive");
  const int n = theta->n();
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw InputError("powers_rieffel: bad coordinate pair");
  if (std::abs(theta->matrix()(a, b) + lambda) > 1e-14)
    throw InputError("powers_rieffel: theta on the coordinate pair must equal -lambda");
  Profile prof{lambda, 0.75 * std::min(lambda, 1.0 - lambda)};
  const int samples = 1 << 15;
  auto fc = fourier([&](double x) { return prof.f(x); }, K, samples);
  auto gc = fourier([&](double x) { return prof.g(x); }, K, samples);
  gc[K] = lambda;  // exact zeroth coefficient, int g = lambda
  NCPoly fv2(theta), gv(theta);
  for (int k = -K; k <= K; ++k) {
    Mode p{}, v2{};
    p[a] = k;
    v2[b] = 1;
    gv.add_term(p, gc[k + K]);
    fv2 += nc_mul(NCPoly::monomial(theta, p, fc[k + K]), NCPoly::monomial(theta, v2));
  }
  NCPoly e = fv2 + gv + nc_star(fv2);
  // Fourier data of real functions: make e exactly self-adjoint.
  e = cplx(0.5) * (e + nc_star(e));
  e.prune();
  return e;
}

PowersRieffel powers_rieffel(double lambda, int K) {
  RMatrix th(2, 2);
  th << 0.0, -lambda, lambda, 0.0;
  auto theta = Theta::make(th);
  PowersRieffel out;
  out.e = powers_rieffel_embedded(theta, 0, 1, lambda, K);
  out.lambda = lambda;
  out.K = K;
  out.ramp = 0.75 * std::min(lambda, 1.0 - lambda);
  MatNCPoly e = MatNCPoly::from_scalar(out.e);
  auto rep = topological_charge(e);
  out.trace = rep.trace;
  out.defect = rep.defect;
  out.chern = rep.c(0, 1);
  return out;
}

// ------------------------------------------------------------ orientability

std::vector<CMatrix> gamma_matrices(int n) {
  if (n < 1 || n > kMaxTorusDim) throw DimensionError("gamma_matrices: n out of range");
  if (n == 1) return {CMatrix::Identity(1, 1)};
  if (n == 2) return {pauli(2), pauli(1)};
  if (n % 2 == 1) {
    auto g = gamma_matrices(n - 1);
    g.push_back(chirality_gamma(n - 1));
    return g;
  }
  auto lower = gamma_matrices(n - 2);
  CMatrix chi = chirality_gamma(n - 2);
  std::vector<CMatrix> g;
  for (const auto& x : lower) g.push_back(kron(pauli(1), x));
  g.push_back(kron(pauli(1), chi));
  g.push_back(kron(pauli(2), CMatrix::Identity(chi.rows(), chi.cols())));
  return g;
}

CMatrix chirality_gamma(int n) {
  auto g = gamma_matrices(n);
  if (n % 2 == 1) return CMatrix::Identity(g.front().rows(), g.front().cols());
  CMatrix out = CMatrix::Identity(g.front().rows(), g.front().cols());
  for (const auto& x : g) out = out * x;
  cplx ph = std::pow(kI, n / 2);
  return ph * out;
}

OrientabilityReport orientability_cycle(const ThetaPtr& theta) {
  const int n = theta->n();
  if (n < 1 || n > 5) throw DimensionError("orientability_cycle: n must lie in 1..5");
  auto gam = gamma_matrices(n);
  const int d = static_cast<int>(gam.front().rows());
  auto tensor = [&](const CMatrix& m, const NCPoly& a) {
    MatNCPoly out(theta, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (m(i, j) != cplx(0.0)) out(i, j) = m(i, j) * a;
    return out;
  };
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  OrientabilityReport rep;
  rep.normalization = std::pow(kI, n / 2) / (std::pow(-2.0 * kPi, n) * fact);
  MatNCPoly total(theta, d);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    // a_0 = U_{s(n)}^-1 ... U_{s(1)}^-1
    NCPoly a0 = NCPoly::scalar(theta, 1.0);
    for (int k = n - 1; k >= 0; --k) {
      Mode p{};
      p[idx[k]] = -1;
      a0 = nc_mul(a0, NCPoly::monomial(theta, p));
    }
    MatNCPoly term = tensor(CMatrix::Identity(d, d), a0);
    // [D, U_k] = -2 pi gamma^k U_k for D = i gamma^mu d_mu
    for (int k = 0; k < n; ++k) {
      Mode p{};
      p[idx[k]] = 1;
      term = mat_mul(term, tensor(-2.0 * kPi * gam[idx[k]], NCPoly::monomial(theta, p)));
    }
    total += double(permutation_sign(idx)) * term;
  } while (std::next_permutation(idx.begin(), idx.end()));
  total *= rep.normalization;
  rep.target = chirality_gamma(n);
  rep.residual = (total - tensor(rep.target, NCPoly::scalar(theta, 1.0))).max_abs();
  return rep;
}

}  // namespace ncg
