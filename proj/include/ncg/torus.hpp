// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncg/linalg.hpp"

namespace ncg {

inline constexpr int kMaxTorusDim = 6;
inline constexpr std::size_t kMaxSupport = 1000000;
inline constexpr double kPruneTol = 1e-15;

// Fourier index p in Z^n, trailing slots zero.
using Mode = std::array<int, kMaxTorusDim>;

Mode make_mode(const std::vector<int>& p);
std::vector<int> mode_vector(const Mode& p, int n);
Mode operator+(const Mode& a, const Mode& b);
Mode operator-(const Mode& a);
bool is_zero_mode(const Mode& p);

class Theta {
 public:
  explicit Theta(const RMatrix& theta);
  static std::shared_ptr<const Theta> make(const RMatrix& theta);
  static std::shared_ptr<const Theta> zero(int n);
  // Block diagonal with 2x2 blocks [[0, t], [-t, 0]]; an odd n gets a trailing zero row.
  static std::shared_ptr<const Theta> blocks(int n, const std::vector<double>& t);

  int n() const { return n_; }
  const RMatrix& matrix() const { return theta_; }
  // p^T theta q
  double operator()(const Mode& p, const Mode& q) const;
  // U^p U^q = phase(p, q) U^{p+q}
  cplx phase(const Mode& p, const Mode& q) const;
  double sin_phase(const Mode& p, const Mode& q) const;
  bool same(const Theta& o) const;

 private:
  int n_;
  RMatrix theta_;
};

using ThetaPtr = std::shared_ptr<const Theta>;

// Finite sum of Fourier monomials U^p.
class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(ThetaPtr theta);
  static NCPoly scalar(ThetaPtr theta, cplx c);
  static NCPoly monomial(ThetaPtr theta, const Mode& p, cplx c = 1.0);

  const ThetaPtr& theta() const { return theta_; }
  int n() const;
  const std::map<Mode, cplx>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  cplx coeff(const Mode& p) const;
  void add_term(const Mode& p, cplx c);
  void prune(double tol = kPruneTol);
  bool is_zero(double tol = 0.0) const;
  double max_abs() const;
  double l1_norm() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(cplx c);

 private:
  ThetaPtr theta_;
  std::map<Mode, cplx> terms_;
};

NCPoly nc_mul(const NCPoly& a, const NCPoly& b);
NCPoly nc_star(const NCPoly& a);
cplx nc_trace(const NCPoly& a);
NCPoly nc_derive(const NCPoly& a, int mu);
NCPoly nc_comm(const NCPoly& a, const NCPoly& b);
NCPoly operator+(NCPoly a, const NCPoly& b);
NCPoly operator-(NCPoly a, const NCPoly& b);
NCPoly operator*(cplx c, NCPoly a);
inline NCPoly operator*(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b); }

void require_same_theta(const ThetaPtr& a, const ThetaPtr& b, const char* who);

// p is central iff theta p has integer entries.
bool center_test(const Mode& p, const Theta& theta, double tol = 1e-12);
// M^T theta M - theta integral.
bool modular_compatible(const IMatrix& M, const Theta& theta, double tol = 1e-12);

// Random polynomial with the given support radius (sup norm) and term count.
NCPoly random_ncpoly(ThetaPtr theta, std::mt19937_64& rng, int terms, int radius);

// N x N matrices over the torus algebra.
class MatNCPoly {
 public:
  MatNCPoly() = default;
  MatNCPoly(ThetaPtr theta, int N);
  static MatNCPoly identity(ThetaPtr theta, int N);
  static MatNCPoly from_scalar(const NCPoly& a);
  static MatNCPoly constant(ThetaPtr theta, const CMatrix& m);

  int size() const { return N_; }
  const ThetaPtr& theta() const { return theta_; }
  NCPoly& operator()(int i, int j) { return entries_[i * N_ + j]; }
  const NCPoly& operator()(int i, int j) const { return entries_[i * N_ + j]; }

  MatNCPoly& operator+=(const MatNCPoly& o);
  MatNCPoly& operator-=(const MatNCPoly& o);
  MatNCPoly& operator*=(cplx c);

  double max_abs() const;
  double l1_norm() const;  // sum of entry l1 norms, bounds the operator norm up to N
  bool is_zero(double tol = 0.0) const;
  void prune(double tol = kPruneTol);

 private:
  ThetaPtr theta_;
  int N_ = 0;
  std::vector<NCPoly> entries_;
};

MatNCPoly mat_mul(const MatNCPoly& a, const MatNCPoly& b);
MatNCPoly adjoint(const MatNCPoly& a);
MatNCPoly derive(const MatNCPoly& a, int mu);
MatNCPoly comm(const MatNCPoly& a, const MatNCPoly& b);
cplx trace_integral(const MatNCPoly& a);  // int tr
MatNCPoly operator+(MatNCPoly a, const MatNCPoly& b);
MatNCPoly operator-(MatNCPoly a, const MatNCPoly& b);
MatNCPoly operator*(cplx c, MatNCPoly a);
inline MatNCPoly operator*(const MatNCPoly& a, const MatNCPoly& b) { return mat_mul(a, b); }
// Deviation from a* = a and a* = -a.
double hermitian_defect(const MatNCPoly& a);
double antihermitian_defect(const MatNCPoly& a);

MatNCPoly random_antihermitian(ThetaPtr theta, int N, std::mt19937_64& rng, int terms, int radius);

// ------------------------------------------------------------------ forms

// omega = (1/p!) omega_{mu1..mup} dx^mu1 ^ ... ^ dx^mup, stored on increasing
// index tuples.
class NCForm {
 public:
  NCForm() = default;
  NCForm(ThetaPtr theta, int N, int degree);

  int degree() const { return p_; }
  int n() const;
  int size() const { return N_; }
  const ThetaPtr& theta() const { return theta_; }
  // Component for any index order: sign times the stored value, zero when an
  // index repeats.
  MatNCPoly get(const std::vector<int>& idx) const;
  void set(const std::vector<int>& idx, const MatNCPoly& v);
  const std::map<std::vector<int>, MatNCPoly>& components() const { return comps_; }
  double max_abs() const;

 private:
  ThetaPtr theta_;
  int N_ = 0, p_ = 0;
  std::map<std::vector<int>, MatNCPoly> comps_;
};

NCForm wedge(const NCForm& a, const NCForm& b);
NCForm ext_d(const NCForm& a);
NCForm hodge(const NCForm& a);
// int of the top component, i.e. the epsilon-contracted integral.
cplx form_integral(const NCForm& a);
NCForm random_form(ThetaPtr theta, int N, int degree, std::mt19937_64& rng, int terms, int radius);

// Increasing index tuples of size k in 0..n-1.
std::vector<std::vector<int>> combinations(int n, int k);
// Sign of the permutation sorting idx, 0 when an index repeats.
int permutation_sign(const std::vector<int>& idx);

// ---------------------------------------------------------- connections

using Connection = std::vector<MatNCPoly>;  // A_mu, mu = 0..n-1
using FieldStrength = std::vector<std::vector<MatNCPoly>>;

// e defaults to the identity. Throws InvariantError when e is not a projector
// within tol.
FieldStrength curvature(const Connection& A, const std::optional<MatNCPoly>& e, double g,
                        double tol = 1e-9);
// -c int tr F_{mu nu} F_{mu nu} summed over all mu, nu; c = 1/4 by default.
double ym_action(const Connection& A, const std::optional<MatNCPoly>& e, double g,
                 double normalization = 0.25);
// e d_mu F^{mu nu} e + g [e A_mu e, F^{mu nu}], one entry per nu.
std::vector<MatNCPoly> eom_residual(const Connection& A, const std::optional<MatNCPoly>& e, double g);
// Largest coefficient of the cyclic sum D_l F_{mn} + D_m F_{nl} + D_n F_{lm}.
double bianchi_residual(const Connection& A, const std::optional<MatNCPoly>& e, double g);

// u A u* + (1/g) u d(u*). Throws InvariantError when u is not unitary within tol.
Connection gauge_transform(const Connection& A, const MatNCPoly& u, double g, double tol = 1e-9);

// Chern-Simons action at n = 3, connection A -> u A u^-1 + u d u^-1 (g = 1).
double cs_action(const Connection& A, double k);
// Gamma[u] = S_CS[A^u] - S_CS[A] = (k / 12 pi) eps int tr (u* du)^3.
double cs_gauge_defect(const MatNCPoly& u, double k);

struct ChargeReport {
  RMatrix c;                   // first Chern table c_{mu nu}
  std::optional<double> q;     // second pairing at n = 4
  double trace = 0.0;          // int tr e
  double defect = 0.0;         // l1 norm of e^2 - e
  double error_bar = 0.0;
};

ChargeReport topological_charge(const MatNCPoly& e);
// Second pairing of e' e'' with e', e'' living on commuting coordinate blocks,
// computed from the two factors only.
double second_pairing_product(const MatNCPoly& e1, const std::vector<int>& coords1,
                              const MatNCPoly& e2, const std::vector<int>& coords2);
// q = (1 / (2 (2 pi i)^2)) eps int tr(e de de de de), n = 4.
double second_pairing(const MatNCPoly& e);

struct PowersRieffel {
  NCPoly e;
  double lambda = 0.0;
  int K = 0;
  double trace = 0.0;
  double defect = 0.0;   // l1 norm of e^2 - e
  double chern = 0.0;    // c_12
  double ramp = 0.0;     // profile ramp width
};

// e = f(V1) V2 + g(V1) + V2* f(V1) on A_theta(2D) with theta_12 = -lambda, so
// that V2 V1 = e^{2 pi i lambda} V1 V2 for V1 = U^(1,0), V2 = U^(0,1). Profiles
// are Fourier truncated at |k| <= K. With this orientation c_12 = +1.
PowersRieffel powers_rieffel(double lambda, int K);
// Same projector placed on coordinates (a, b) of an n-dimensional torus whose
// theta restricts to -lambda on that pair.
NCPoly powers_rieffel_embedded(ThetaPtr theta, int a, int b, double lambda, int K);

// ------------------------------------------------------------ orientability

// Euclidean gamma matrices of size 2^[n/2]; n = 2 gives (sigma_2, sigma_1).
std::vector<CMatrix> gamma_matrices(int n);
CMatrix chirality_gamma(int n);  // i^{n/2} gamma^1...gamma^n, identity for odd n

struct OrientabilityReport {
  double residual = 0.0;
  CMatrix target;
  cplx normalization;
};

OrientabilityReport orientability_cycle(const ThetaPtr& theta);

}  // namespace ncg
