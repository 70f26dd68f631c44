// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "ncg/errors.hpp"

namespace ncg {

long long integer_determinant(const IMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const int n = int(m.rows());
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * (long long)a[n - 1][n - 1];
}

IMatrix intersection_form(const AlgebraSpec& algebra, const MultiplicityMatrix& mu) {
  auto reps = algebra.rep_list(mu.size());
  const int ns = int(algebra.summands.size());
  IMatrix out = IMatrix::Zero(ns, ns);
  auto factor = [&](int s) { return algebra.summands[s].field == Field::H ? 2 : 1; };
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < mu.size(); ++j) {
      int a = reps[i].summand, b = reps[j].summand;
      out(a, b) += mu(i, j) * factor(a) * factor(b);
    }
  return out;
}

// ------------------------------------------------------------- gauge content

std::vector<GaugeFactor> gauge_group(const AlgebraSpec& algebra) {
  std::vector<GaugeFactor> out;
  for (int s = 0; s < int(algebra.summands.size()); ++s) {
    const auto& sm = algebra.summands[s];
    GaugeFactor f;
    f.summand = s;
    f.field = sm.field;
    f.n = sm.n;
    std::string n = std::to_string(sm.n);
    switch (sm.field) {
      case Field::R:
        f.name = "O(" + n + ")";
        f.abelian = sm.n <= 2;
        break;
      case Field::C:
        f.name = "U(" + n + ")";
        f.abelian = sm.n == 1;
        break;
      case Field::H:
        f.name = sm.n == 1 ? "SU(2)" : "Sp(" + n + ")";
        f.abelian = false;
        break;
    }
    out.push_back(f);
  }
  return out;
}

std::string gauge_group_string(const AlgebraSpec& algebra) {
  std::string s;
  for (const auto& f : gauge_group(algebra)) s += (s.empty() ? "" : " x ") + f.name;
  return s;
}

FermionTable fermion_table(const FiniteTriple& triple) {
  Representation rep(triple.algebra, triple.mu);
  FermionTable t;
  auto split = s0_colouring(triple);
  t.s0_real = split.has_value();
  for (const auto& b : rep.blocks()) {
    FermionRow r;
    r.i = b.i;
    r.j = b.j;
    r.multiplicity = b.mult;
    r.chirality = b.sign;
    r.dimension = b.dim;
    if (split) r.particle = split->at({b.i, b.j}) == 0 ? 1 : -1;
    t.rows.push_back(r);
  }
  return t;
}

std::vector<Coupling> coupling_constants(const AlgebraSpec& algebra, const MultiplicityMatrix& mu,
                                         int n, double F4, double Lambda) {
  if (!(F4 > 0) || !(Lambda > 0)) throw InputError("F4 and Lambda must be positive");
  auto reps = algebra.rep_list(mu.size());
  std::vector<Coupling> out;
  for (const auto& f : gauge_group(algebra)) {
    if (f.abelian) continue;
    long long sum = 0;
    for (int i = 0; i < mu.size(); ++i) {
      if (reps[i].summand != f.summand) continue;
      for (int j = 0; j < mu.size(); ++j) sum += std::llabs(mu(i, j)) * algebra.rep_dim(reps[j]);
    }
    if (sum == 0) throw InputError("gauge factor " + f.name + " of summand " + std::to_string(f.summand) +
                                   " acts on no fermion");
    Coupling c;
    c.summand = f.summand;
    c.row_sum = sum;
    c.g = std::pow(2 * kPi, n / 4.0) * std::sqrt(1.5 / (F4 * std::pow(Lambda, n - 4) * double(sum)));
    out.push_back(c);
  }
  return out;
}

AbelianSector abelian_sector(const AlgebraSpec& algebra, const MultiplicityMatrix& mu,
                             const std::optional<RMatrix>& P, double tol) {
  auto reps = algebra.rep_list(mu.size());
  const int nr = mu.size();
  AbelianSector a;
  a.Q_rep = IMatrix::Zero(nr, nr);
  for (int i = 0; i < nr; ++i) {
    const long long di = algebra.rep_dim(reps[i]);
    for (int k = 0; k < nr; ++k) {
      const long long dk = algebra.rep_dim(reps[k]);
      a.Q_rep(i, i) += 2 * std::llabs(mu(i, k)) * di * dk;
      a.Q_rep(i, k) -= 2 * std::llabs(mu(i, k)) * di * dk;
    }
  }
  for (int s = 0; s < int(algebra.summands.size()); ++s) {
    if (algebra.summands[s].field != Field::C) continue;
    bool present = false;
    for (const auto& r : reps) present = present || r.summand == s;
    if (present) a.candidates.push_back(s);
  }
  a.N = int(a.candidates.size());
  a.charges = RMatrix::Zero(nr, a.N);
  for (int i = 0; i < nr; ++i)
    for (int c = 0; c < a.N; ++c)
      if (reps[i].summand == a.candidates[c]) a.charges(i, c) = reps[i].conjugate ? -1.0 : 1.0;
  a.Q = a.charges.transpose() * a.Q_rep.cast<double>() * a.charges;
  if (a.N > 0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(a.Q);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::vector<int> ker;
    for (int k = 0; k < a.N; ++k)
      if (std::abs(es.eigenvalues()(k)) <= tol * scale) ker.push_back(k);
    a.kernel = RMatrix(a.N, ker.size());
    for (int k = 0; k < int(ker.size()); ++k) a.kernel.col(k) = es.eigenvectors().col(ker[k]);
  } else {
    a.kernel = RMatrix(0, 0);
  }
  if (P) {
    if (P->rows() != a.N) throw InputError("unimodularity matrix must have one row per abelian candidate");
    const double scale = std::max(1.0, a.Q.cwiseAbs().maxCoeff());
    for (int c = 0; c < P->cols(); ++c) {
      RVector v = P->col(c);
      if (v.dot(a.Q * v) <= tol * scale * std::max(1.0, v.squaredNorm()))
        throw InputError("column " + std::to_string(c) + " of P lies in ker Q: that field has no kinetic term");
    }
    RMatrix g = P->transpose() * a.Q * *P;
    double lam = g.diagonal().mean();
    a.lambda = lam;
    a.p_residual = (g - lam * RMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    a.N_prime = int(P->cols());
  } else {
    a.N_prime = std::max(0, a.N - 1);
  }
  a.parameter_count = a.N_prime * (a.N - a.N_prime);
  return a;
}

RVector charges_from_P(const AbelianSector& sector, const RMatrix& P, int column) {
  if (P.rows() != sector.N || column < 0 || column >= P.cols())
    throw InputError("unimodularity matrix does not match the abelian sector");
  return sector.charges * P.col(column);
}

bool AnomalyReport::anomaly_free(double tol) const {
  if (std::abs(mixed_gravitational) > tol || std::abs(cubic) > tol) return false;
  for (const auto& [i, r] : rigid)
    if (std::abs(r) > tol) return false;
  for (const auto& [i, r] : linear)
    if (std::abs(r) > tol) return false;
  return true;
}

AnomalyReport anomaly_check(const AlgebraSpec& algebra, const IMatrix& epsilon,
                            const std::optional<RVector>& charges) {
  if (epsilon.rows() != epsilon.cols()) throw InputError("epsilon must be square");
  const int n = int(epsilon.rows());
  auto reps = algebra.rep_list(n);
  if (charges && charges->size() != n) throw InputError("one abelian charge per irrep is required");
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = algebra.rep_dim(reps[i]);
  auto A = [&](int i, int j) { return double(epsilon(i, j) - epsilon(j, i)); };
  AnomalyReport r;
  r.mixed_row = RVector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.mixed_row(j) += A(i, j) * d[i];
  std::vector<int> lin_rows;
  for (int i = 0; i < n; ++i) {
    if (d[i] >= 3) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += d[j] * A(i, j);
      r.rigid.push_back({i, s});
    }
    if (d[i] >= 2) lin_rows.push_back(i);
  }
  r.linear_rows = RMatrix::Zero(lin_rows.size(), n);
  for (int q = 0; q < int(lin_rows.size()); ++q) {
    int i = lin_rows[q];
    for (int j = 0; j < n; ++j) {
      r.linear_rows(q, i) += d[j] * A(i, j);
      r.linear_rows(q, j) -= d[j] * A(i, j);
    }
  }
  // (B_i - B_j)^3 = B_i^3 - 3 B_i^2 B_j + 3 B_i B_j^2 - B_j^3
  auto add = [&](std::vector<int> key, double c) {
    std::sort(key.begin(), key.end());
    r.cubic_poly[key] += c;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double w = d[i] * d[j] * A(i, j);
      if (w == 0.0) continue;
      add({i, i, i}, w);
      add({i, i, j}, -3 * w);
      add({i, j, j}, 3 * w);
      add({j, j, j}, -w);
    }
  for (auto it = r.cubic_poly.begin(); it != r.cubic_poly.end();)
    it = std::abs(it->second) < 1e-12 ? r.cubic_poly.erase(it) : std::next(it);
  if (charges) {
    const RVector& B = *charges;
    r.mixed_gravitational = r.mixed_row.dot(B);
    RVector lin = r.linear_rows * B;
    for (int q = 0; q < int(lin_rows.size()); ++q) r.linear.push_back({lin_rows[q], lin(q)});
    double cubic = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cubic += d[i] * d[j] * A(i, j) * std::pow(B(i) - B(j), 3);
    r.cubic = cubic;
  } else {
    for (int q = 0; q < int(lin_rows.size()); ++q) r.linear.push_back({lin_rows[q], 0.0});
  }
  return r;
}

std::optional<IMatrix> particle_half(const FiniteTriple& triple) {
  if (triple.particles) {
    if (!s0_declared(triple, *triple.particles)) return std::nullopt;
    return *triple.particles;
  }
  auto split = s0_split(triple);
  if (!split) return std::nullopt;
  const int n = triple.mu.size();
  IMatrix eps = IMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (triple.mu(i, j) == 0) continue;
      if (i == j) eps(i, i) = triple.mu(i, i) / 2;
      else if (split->at({i, j}) == 0) eps(i, j) = triple.mu(i, j);
    }
  return eps;
}

// ---------------------------------------------------------------- constants

SpectralConstants spectral_constants(double F0, double F2, double F4, double Lambda, double tr1, int n) {
  if (!(F4 > 0)) throw InputError("F4 must be positive");
  if (!(Lambda > 0)) throw InputError("Lambda must be positive");
  if (!(F2 > 0)) throw InputError("F2 must be positive");
  if (!(tr1 > 0)) throw InputError("tr(1) must be positive");
  if (n < 1) throw InputError("dimension must be positive");
  SpectralConstants c;
  c.F0 = F0;
  c.F2 = F2;
  c.F4 = F4;
  c.Lambda = Lambda;
  c.tr1 = tr1;
  c.n = n;
  const double tp = 2 * kPi;
  c.G = 1.5 * (tp / tr1) * F2 * Lambda * Lambda;
  c.Lambda_c = (1.0 / 12.0) * (tr1 * tr1 / std::pow(tp, 4)) * (F0 / F2) * Lambda * Lambda;
  c.mu_scalar = std::sqrt(2 * F2 / F4) * Lambda;
  c.lambda_norm = 0.5 * F4 * std::pow(Lambda, n - 4) / std::pow(tp, n / 2.0);
  c.X = std::pow(tp, n / 2.0) / (4 * std::pow(Lambda, n - 4) * F4);
  return c;
}

// ----------------------------------------------------------------- Higgs

const char* higgs_type_name(HiggsType t) {
  switch (t) {
    case HiggsType::Complex: return "complex";
    case HiggsType::Real: return "real";
    case HiggsType::Quaternionic: return "quaternionic";
    case HiggsType::ComplexRH: return "complex (R-H link, T^2 = -1)";
  }
  return "?";
}

namespace {

Field rep_field(const Representation& rep, int i) {
  return rep.algebra().summands[rep.reps()[i].summand].field;
}

// Which one-form link and orientation carries the oriented pair (a, b).
struct FieldRef {
  int link = -1;
  bool derived = false;
  bool adjoint = false;
};

FieldRef find_field(const HiggsContent& c, int a, int b) {
  for (int l = 0; l < int(c.one_forms.links.size()); ++l) {
    const auto& L = c.one_forms.links[l];
    if (L.i == a && L.k == b) return {l, false, false};
    if (L.i == b && L.k == a) return {l, false, true};
    if (!L.derived.empty()) {
      auto [ci, ck] = L.derived[0];
      if (ci == a && ck == b) return {l, true, false};
      if (ci == b && ck == a) return {l, true, true};
    }
  }
  return {};
}

int field_index(const HiggsContent& c, int link, int p) {
  int idx = 0;
  for (int l = 0; l < link; ++l) idx += c.one_forms.links[l].multiplicity;
  return idx + p;
}

// Multiplicity-space coefficient of the oriented pair (a, b) in column j.
std::optional<CMatrix> m_coefficient(const HiggsContent& c, int a, int b, int p, int j) {
  FieldRef f = find_field(c, a, b);
  if (f.link < 0) return std::nullopt;
  const auto& L = c.one_forms.links[f.link];
  if (p >= L.multiplicity) return std::nullopt;
  const auto& table = f.derived ? L.derived_M[0][p] : L.M[p];
  auto it = table.find(j);
  if (it == table.end()) return std::nullopt;
  return f.adjoint ? CMatrix(it->second.adjoint()) : it->second;
}

int pair_multiplicity(const HiggsContent& c, int a, int b) {
  FieldRef f = find_field(c, a, b);
  return f.link < 0 ? 0 : c.one_forms.links[f.link].multiplicity;
}

}  // namespace

HiggsContent higgs_fields(const FiniteTriple& triple, double X) {
  Representation rep(triple.algebra, triple.mu);
  HiggsContent out;
  out.one_forms = one_form_space(triple, X);
  std::vector<HiggsField> derived;
  for (int l = 0; l < int(out.one_forms.links.size()); ++l) {
    const auto& L = out.one_forms.links[l];
    Field fi = rep_field(rep, L.i), fk = rep_field(rep, L.k);
    HiggsType type = HiggsType::Complex;
    std::string note;
    if (fi == Field::R && fk == Field::R) type = HiggsType::Real;
    else if (fi == Field::H && fk == Field::H) type = HiggsType::Quaternionic;
    else if ((fi == Field::R && fk == Field::H) || (fi == Field::H && fk == Field::R)) type = HiggsType::ComplexRH;
    int ci = rep.conj_rep(L.i), ck = rep.conj_rep(L.k);
    if (ci == L.k && ck == L.i) note = "self-conjugate link with exchanged ends";
    if (L.outside_reconstruction) note += std::string(note.empty() ? "" : "; ") + "p > 1: outside the p <= 1 gauge reconstruction";
    std::vector<BlockKey> links;
    for (const auto& [key, m] : triple.dirac_blocks)
      if ((key.i == L.i && key.k == L.k) || (key.i == L.k && key.k == L.i)) links.push_back(key);
    for (int p = 0; p < L.multiplicity; ++p) {
      HiggsField h;
      h.i = L.i;
      h.j = L.k;
      h.p = p;
      h.rows = rep.rep_dim(L.i);
      h.cols = rep.rep_dim(L.k);
      h.type = type;
      h.links = links;
      h.note = note;
      out.fields.push_back(h);
      if (!L.derived.empty()) {
        HiggsField d = h;
        d.i = L.derived[0].first;
        d.j = L.derived[0].second;
        d.rows = rep.rep_dim(d.i);
        d.cols = rep.rep_dim(d.j);
        d.derived = true;
        d.source = field_index(out, l, p);
        d.links.clear();
        for (const auto& [key, m] : triple.dirac_blocks)
          if ((key.i == d.i && key.k == d.j) || (key.i == d.j && key.k == d.i)) d.links.push_back(key);
        derived.push_back(d);
      }
    }
  }
  out.fields.insert(out.fields.end(), derived.begin(), derived.end());
  return out;
}

HiggsValues vacuum_values(const HiggsContent& content) {
  HiggsValues v;
  for (const auto& L : content.one_forms.links)
    for (const auto& e : L.E) v.push_back(e);
  return v;
}

HiggsValues random_higgs_values(const Representation& rep, const HiggsContent& content,
                                std::mt19937_64& rng) {
  (void)rep;
  HiggsValues v;
  for (const auto& h : content.fields) {
    if (h.derived) continue;
    switch (h.type) {
      case HiggsType::Real:
        v.push_back(random_matrix(rng, h.rows, h.cols).real().cast<cplx>());
        break;
      case HiggsType::Quaternionic:
        v.push_back(quaternion_embed(random_matrix(rng, h.rows / 2, h.cols / 2),
                                     random_matrix(rng, h.rows / 2, h.cols / 2)));
        break;
      default:
        v.push_back(random_matrix(rng, h.rows, h.cols));
    }
  }
  return v;
}

CMatrix oriented_field(const Representation& rep, const HiggsContent& content,
                       const HiggsValues& values, int a, int b, int p) {
  FieldRef f = find_field(content, a, b);
  if (f.link < 0) return CMatrix::Zero(rep.rep_dim(a), rep.rep_dim(b));
  const auto& L = content.one_forms.links[f.link];
  if (p >= L.multiplicity) return CMatrix::Zero(rep.rep_dim(a), rep.rep_dim(b));
  const CMatrix& phi = values.at(field_index(content, f.link, p));
  CMatrix base = f.derived ? derived_field(rep, L.derived[0].first, L.derived[0].second, phi) : phi;
  return f.adjoint ? CMatrix(base.adjoint()) : base;
}

std::map<BlockKey, CMatrix> yukawa_blocks(const FiniteTriple& triple, const HiggsContent& content,
                                          const HiggsValues& values) {
  Representation rep(triple.algebra, triple.mu);
  std::size_t expected = 0;
  for (const auto& L : content.one_forms.links) expected += L.multiplicity;
  if (values.size() != expected) throw InputError("wrong number of Higgs field values");
  std::map<BlockKey, CMatrix> out;
  for (const auto& [key, m] : triple.dirac_blocks) {
    CMatrix b = CMatrix::Zero(m.rows(), m.cols());
    const int mult = pair_multiplicity(content, key.i, key.k);
    for (int p = 0; p < mult; ++p) {
      auto coeff = m_coefficient(content, key.i, key.k, p, key.j);
      if (!coeff) continue;
      b += kron(oriented_field(rep, content, values, key.i, key.k, p), *coeff);
    }
    out[key] = b;
  }
  return out;
}

CMatrix yukawa_operator(const FiniteTriple& triple, const HiggsContent& content,
                        const HiggsValues& values) {
  FiniteTriple t = triple;
  t.dirac_blocks = yukawa_blocks(triple, content, values);
  return assemble_dirac(t);
}

HiggsValues gauge_transform_higgs(const Representation& rep, const HiggsContent& content,
                                  const HiggsValues& values, const AlgebraElement& u) {
  HiggsValues out;
  int idx = 0;
  for (const auto& L : content.one_forms.links)
    for (int p = 0; p < L.multiplicity; ++p, ++idx) {
      CMatrix ua = rep.rep_matrix(L.i, u), ub = rep.rep_matrix(L.k, u);
      out.push_back(ua * values.at(idx) * ub.inverse());
    }
  return out;
}

// --------------------------------------------------------------- potential

const char* loop_kind_name(LoopKind k) {
  switch (k) {
    case LoopKind::Link: return "link";
    case LoopKind::Pair: return "pair";
    case LoopKind::Chain: return "chain";
    case LoopKind::Corner: return "corner";
    case LoopKind::Rectangle: return "rectangle";
    case LoopKind::Square: return "square";
  }
  return "?";
}

namespace {

using Vertex = std::pair<int, int>;

struct LoopGraph {
  std::vector<Vertex> vertices;
  std::map<Vertex, std::vector<Vertex>> adj;
};

LoopGraph loop_graph(const Representation& rep, const HiggsContent& content,
                     const std::optional<std::map<Vertex, int>>& colour) {
  LoopGraph g;
  for (const auto& b : rep.blocks()) {
    Vertex v{b.i, b.j};
    if (colour && colour->at(v) != 0) continue;
    g.vertices.push_back(v);
  }
  std::set<Vertex> keep(g.vertices.begin(), g.vertices.end());
  for (const auto& v : g.vertices)
    for (const auto& w : g.vertices) {
      if (v == w) continue;
      bool linked = false;
      if (v.second == w.second) linked = pair_multiplicity(content, v.first, w.first) > 0 &&
                                         m_coefficient(content, v.first, w.first, 0, v.second).has_value();
      else if (v.first == w.first) linked = pair_multiplicity(content, v.second, w.second) > 0 &&
                                            m_coefficient(content, v.second, w.second, 0, v.first).has_value();
      if (linked) g.adj[v].push_back(w);
    }
  return g;
}

std::vector<Vertex> canonical_rotation(const std::vector<Vertex>& w) {
  std::vector<Vertex> best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::vector<Vertex> c(w.begin() + r, w.end());
    c.insert(c.end(), w.begin(), w.begin() + r);
    best = std::min(best, c);
  }
  return best;
}

int distinct_rotations(const std::vector<Vertex>& w) {
  std::set<std::vector<Vertex>> s;
  for (std::size_t r = 0; r < w.size(); ++r) {
    std::vector<Vertex> c(w.begin() + r, w.end());
    c.insert(c.end(), w.begin(), w.begin() + r);
    s.insert(c);
  }
  return int(s.size());
}

bool is_vertical(const Vertex& v, const Vertex& w) { return v.second == w.second; }

LoopKind classify(const std::vector<Vertex>& w, bool* mirror) {
  const int L = int(w.size());
  std::set<Vertex> distinct(w.begin(), w.end());
  if (L == 2) {
    *mirror = !is_vertical(w[0], w[1]);
    return LoopKind::Link;
  }
  int r = 0;
  std::vector<bool> kinds;
  for (int s = 0; s < L; ++s) {
    bool v = is_vertical(w[s], w[(s + 1) % L]);
    kinds.push_back(v);
    r += v;
  }
  *mirror = r == 0;
  if (r == 4 || r == 0) {
    if (distinct.size() == 2) return LoopKind::Pair;
    if (distinct.size() == 3) return LoopKind::Chain;
    return LoopKind::Square;
  }
  bool alternating = kinds[0] != kinds[1] && kinds[1] != kinds[2] && kinds[2] != kinds[3];
  return alternating ? LoopKind::Rectangle : LoopKind::Corner;
}

// Step from w to v (block D~_{vw}): the pair and column that carry it.
struct StepInfo {
  int a, b, col;
  bool vertical;
};

StepInfo step_info(const Vertex& v, const Vertex& w) {
  if (is_vertical(v, w)) return {v.first, w.first, v.second, true};
  return {v.second, w.second, v.first, false};
}

std::string field_name(int a, int b, int p, bool conj) {
  std::ostringstream os;
  os << (conj ? "conj(F" : "F") << a << b;
  if (p) os << "^" << p;
  if (conj) os << ")";
  return os.str();
}

std::string monomial_string(const std::vector<Vertex>& w, const std::vector<int>& ps) {
  const int L = int(w.size());
  std::string left, right;
  for (int s = 0; s < L; ++s) {
    StepInfo st = step_info(w[s], w[(s + 1) % L]);
    std::string f = field_name(st.a, st.b, ps[s], !st.vertical);
    auto& target = st.vertical ? left : right;
    target += (target.empty() ? "" : " ") + f;
  }
  std::string out;
  if (!left.empty()) out += "tr(" + left + ")";
  if (!right.empty()) out += std::string(out.empty() ? "" : " ") + "tr(" + right + ")";
  return out;
}

std::vector<std::vector<int>> p_assignments(const HiggsContent& content, const std::vector<Vertex>& w) {
  std::vector<int> sizes;
  const int L = int(w.size());
  for (int s = 0; s < L; ++s) {
    StepInfo st = step_info(w[s], w[(s + 1) % L]);
    sizes.push_back(pair_multiplicity(content, st.a, st.b));
  }
  std::vector<std::vector<int>> out{{}};
  for (int sz : sizes) {
    std::vector<std::vector<int>> next;
    for (const auto& pre : out)
      for (int p = 0; p < sz; ++p) {
        auto q = pre;
        q.push_back(p);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

cplx m_chain_trace(const HiggsContent& content, const std::vector<Vertex>& w, const std::vector<int>& ps) {
  const int L = int(w.size());
  CMatrix acc;
  for (int s = 0; s < L; ++s) {
    StepInfo st = step_info(w[s], w[(s + 1) % L]);
    auto m = m_coefficient(content, st.a, st.b, ps[s], st.col);
    if (!m) return 0.0;
    CMatrix f = st.vertical ? *m : CMatrix(m->conjugate());
    acc = s == 0 ? f : CMatrix(acc * f);
  }
  return acc.trace();
}

cplx field_chain_value(const Representation& rep, const HiggsContent& content, const HiggsValues& values,
                       const std::vector<Vertex>& w, const std::vector<int>& ps) {
  const int L = int(w.size());
  CMatrix left = CMatrix::Identity(rep.rep_dim(w[0].first), rep.rep_dim(w[0].first));
  CMatrix right = CMatrix::Identity(rep.rep_dim(w[0].second), rep.rep_dim(w[0].second));
  for (int s = 0; s < L; ++s) {
    StepInfo st = step_info(w[s], w[(s + 1) % L]);
    CMatrix f = oriented_field(rep, content, values, st.a, st.b, ps[s]);
    if (st.vertical) left = left * f;
    else right = right * f.conjugate();
  }
  return left.trace() * right.trace();
}

void enumerate_walks(const LoopGraph& g, int length, std::vector<std::vector<Vertex>>& out) {
  std::vector<Vertex> cur;
  std::function<void(const Vertex&)> rec = [&](const Vertex& v) {
    if (int(cur.size()) == length) {
      if (v == cur.front()) out.push_back(cur);
      return;
    }
    cur.push_back(v);
    auto it = g.adj.find(v);
    if (it != g.adj.end())
      for (const auto& w : it->second) rec(w);
    cur.pop_back();
  };
  for (const auto& v : g.vertices) {
    cur.clear();
    cur.push_back(v);
    auto it = g.adj.find(v);
    if (it == g.adj.end()) continue;
    for (const auto& w : it->second) rec(w);
  }
}

std::vector<PotentialTerm> loop_terms(const HiggsContent& content, const LoopGraph& g, int length) {
  std::vector<std::vector<Vertex>> walks;
  enumerate_walks(g, length, walks);
  std::map<std::vector<Vertex>, PotentialTerm> classes;
  for (const auto& w : walks) {
    auto c = canonical_rotation(w);
    if (classes.count(c)) continue;
    PotentialTerm t;
    t.walk = c;
    t.walks = distinct_rotations(c);
    t.kind = classify(c, &t.mirror);
    for (const auto& ps : p_assignments(content, c)) {
      cplx tr = m_chain_trace(content, c, ps);
      if (std::abs(tr) > 0) t.m_traces.push_back({ps, tr});
    }
    t.monomial = monomial_string(c, std::vector<int>(c.size(), 0));
    classes[c] = t;
  }
  std::vector<PotentialTerm> out;
  for (auto& [k, t] : classes) out.push_back(std::move(t));
  return out;
}

double terms_value(const Representation& rep, const HiggsContent& content, const HiggsValues& values,
                   const std::vector<PotentialTerm>& terms, double prefactor, double doubling) {
  cplx s = 0.0;
  for (const auto& t : terms)
    for (const auto& [ps, tr] : t.m_traces)
      s += double(t.walks) * tr * field_chain_value(rep, content, values, t.walk, ps);
  return doubling * prefactor * s.real();
}

}  // namespace

PotentialCoefficients scalar_potential(const FiniteTriple& triple, const HiggsContent& content,
                                       const SpectralConstants& constants) {
  if (std::abs(content.one_forms.X - constants.X) > 1e-12 * std::max(1.0, constants.X))
    throw InputError("one-form basis is normalised to X = " + std::to_string(content.one_forms.X) +
                     "; rebuild the Higgs content with X = " + std::to_string(constants.X));
  Representation rep(triple.algebra, triple.mu);
  PotentialCoefficients pc;
  pc.constants = constants;
  pc.mass_coefficient = -0.5 * constants.mu_scalar * constants.mu_scalar;
  pc.quadratic_prefactor = -constants.F2 * std::pow(constants.Lambda, constants.n - 2) /
                           std::pow(2 * kPi, constants.n / 2.0);
  pc.lambda_norm = constants.lambda_norm;
  auto split = s0_colouring(triple);
  pc.particle_half = split.has_value();
  LoopGraph g = loop_graph(rep, content, split);
  pc.quadratic = loop_terms(content, g, 2);
  pc.quartic = loop_terms(content, g, 4);
  const double doubling = pc.particle_half ? 2.0 : 1.0;
  for (const auto& t : pc.quartic) {
    pc.kind_walks[loop_kind_name(t.kind)] += t.walks;
    for (const auto& [ps, tr] : t.m_traces) {
      std::string key = monomial_string(t.walk, ps);
      cplx c = doubling * pc.lambda_norm * double(t.walks) * tr;
      bool two_traces = t.kind == LoopKind::Corner || t.kind == LoopKind::Rectangle;
      (two_traces ? pc.kappa : pc.lambda)[key] += c;
    }
  }
  for (const auto& t : pc.quadratic) pc.kind_walks[loop_kind_name(t.kind)] += t.walks;
  return pc;
}

double quartic_value(const FiniteTriple& triple, const HiggsContent& content,
                     const PotentialCoefficients& coeffs, const HiggsValues& values) {
  Representation rep(triple.algebra, triple.mu);
  return terms_value(rep, content, values, coeffs.quartic, coeffs.lambda_norm, coeffs.particle_half ? 2.0 : 1.0);
}

double potential_value(const FiniteTriple& triple, const HiggsContent& content,
                       const PotentialCoefficients& coeffs, const HiggsValues& values) {
  Representation rep(triple.algebra, triple.mu);
  const double doubling = coeffs.particle_half ? 2.0 : 1.0;
  return terms_value(rep, content, values, coeffs.quadratic, coeffs.quadratic_prefactor, doubling) +
         terms_value(rep, content, values, coeffs.quartic, coeffs.lambda_norm, doubling);
}

double potential_direct(const FiniteTriple& triple, const HiggsContent& content,
                        const SpectralConstants& constants, const HiggsValues& values) {
  CMatrix v = yukawa_operator(triple, content, values);
  CMatrix v2 = v * v;
  const double c2 = constants.F2 * std::pow(constants.Lambda, constants.n - 2) / std::pow(2 * kPi, constants.n / 2.0);
  return -c2 * v2.trace().real() + constants.lambda_norm * (v2 * v2).trace().real();
}

// ---------------------------------------------------------------- SSB bound

std::vector<AlgebraElement> gauge_generators(const AlgebraSpec& algebra) {
  std::vector<AlgebraElement> out;
  const int ns = int(algebra.summands.size());
  auto zero = [&]() {
    AlgebraElement x;
    for (int s = 0; s < ns; ++s) {
      int d = algebra.rep_dim({s, false});
      x.push_back(CMatrix::Zero(d, d));
    }
    return x;
  };
  for (int s = 0; s < ns; ++s) {
    const auto& sm = algebra.summands[s];
    const int d = algebra.rep_dim({s, false});
    std::vector<CMatrix> basis;
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        if (a == b) {
          CMatrix t = CMatrix::Zero(d, d);
          t(a, a) = kI;
          basis.push_back(t);
          continue;
        }
        CMatrix t1 = CMatrix::Zero(d, d), t2 = CMatrix::Zero(d, d);
        t1(a, b) = 1.0;
        t1(b, a) = -1.0;
        t2(a, b) = kI;
        t2(b, a) = kI;
        basis.push_back(t1);
        basis.push_back(t2);
      }
    std::vector<CMatrix> keep;
    for (auto t : basis) {
      if (sm.field == Field::R) t = CMatrix(t.real().cast<cplx>());
      if (sm.field == Field::H) {
        CMatrix w = quaternion_omega(sm.n);
        t = 0.5 * (t + w * t.conjugate() * w.transpose());
      }
      for (const auto& k : keep) t -= (k.adjoint() * t).trace().real() / (k.adjoint() * k).trace().real() * k;
      if (t.norm() > 1e-10) keep.push_back(t / t.norm());
    }
    for (const auto& t : keep) {
      AlgebraElement x = zero();
      x[s] = t;
      out.push_back(x);
    }
  }
  return out;
}

MassBound mass_bound_check(const Representation& rep, const CMatrix& vtilde, double slack) {
  if (vtilde.rows() != rep.dim() || vtilde.cols() != rep.dim()) throw InputError("vacuum operator has the wrong dimension");
  MassBound mb;
  auto eig = hermitian_eigen(vtilde, 1e-9 * std::max(1.0, vtilde.cwiseAbs().maxCoeff()));
  mb.m_f = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
  auto gens = gauge_generators(rep.algebra());
  std::vector<CMatrix> at, comm;
  for (const auto& g : gens) {
    CMatrix pg = rep.pi(g);
    CMatrix a = pg + rep.conj_by_J(pg);
    at.push_back(a);
    comm.push_back(a * vtilde - vtilde * a);
  }
  const int m = int(at.size());
  RMatrix K(m, m), B(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      K(a, b) = (at[a].adjoint() * at[b]).trace().real();
      B(a, b) = (comm[a].adjoint() * comm[b]).trace().real();
    }
  double mb2 = 0.0;
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<RMatrix> ek(K);
    const double kmax = ek.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<int> range;
    for (int k = 0; k < m; ++k)
      if (ek.eigenvalues()(k) > 1e-10 * std::max(1.0, kmax)) range.push_back(k);
    if (!range.empty()) {
      RMatrix W(m, range.size());
      for (int k = 0; k < int(range.size()); ++k)
        W.col(k) = ek.eigenvectors().col(range[k]) / std::sqrt(ek.eigenvalues()(range[k]));
      RMatrix red = W.transpose() * B * W;
      Eigen::SelfAdjointEigenSolver<RMatrix> er(0.5 * (red + red.transpose()));
      mb2 = 1.5 * std::max(0.0, er.eigenvalues().maxCoeff());
    }
  }
  mb.m_b = std::sqrt(mb2);
  mb.ratio = mb.m_f > 0 ? mb2 / (mb.m_f * mb.m_f) : 0.0;
  mb.holds = mb2 <= 6 * mb.m_f * mb.m_f + slack * std::max(1.0, 6 * mb.m_f * mb.m_f);
  return mb;
}

// ----------------------------------------------------------- standard model

AlgebraSpec standard_model_algebra() {
  AlgebraSpec a;
  a.summands = {{Field::C, 1}, {Field::H, 1}, {Field::C, 3}};
  a.reps = {{0, false}, {1, false}, {0, true}, {2, false}};
  return a;
}

MultiplicityMatrix standard_model_mu(int right_neutrinos) {
  MultiplicityMatrix m;
  m.mu = IMatrix(4, 4);
  m.mu << 0, 0, 1, 1, 0, 0, -1, -1, 1, -1, 0, 1, 1, -1, 1, 0;
  m.mu *= 3;
  m.mu(0, 0) += right_neutrinos;
  return m;
}

IMatrix standard_model_epsilon() {
  IMatrix e(4, 4);
  e << 0, 0, 1, 1, 0, 0, -1, -1, 0, 0, 0, 1, 0, 0, 0, 0;
  return 3 * e;
}

FiniteTriple standard_model(const StandardModelInput& in) {
  for (const CMatrix* m : {&in.Me, &in.Mu, &in.Md})
    if (m->rows() != 3 || m->cols() != 3) throw InputError("standard-model mass matrices must be 3x3");
  FiniteTriple t;
  t.algebra = standard_model_algebra();
  t.mu = standard_model_mu(in.right_neutrinos);
  IMatrix eps = standard_model_epsilon();
  eps(0, 0) = in.right_neutrinos / 2;
  if (in.right_neutrinos % 2 == 0) t.particles = eps;
  CMatrix E(1, 2), Ep(1, 2);
  E << 1.0, 0.0;
  Ep = E.conjugate() * quaternion_omega(1).transpose();
  t.dirac_blocks[{0, 1, 2}] = kron(E, in.Me);
  t.dirac_blocks[{0, 1, 3}] = kron(E, in.Mu);
  t.dirac_blocks[{1, 2, 3}] = kron(Ep, in.Md).adjoint();
  if (in.leptoquark) {
    if (in.leptoquark_phi.rows() != 3 || in.leptoquark_phi.cols() != 2 || in.leptoquark_M.rows() != 3 ||
        in.leptoquark_M.cols() != 3)
      throw InputError("leptoquark block needs a 3x2 field and a 3x3 matrix");
    t.dirac_blocks[{1, 3, 2}] = kron(in.leptoquark_phi, in.leptoquark_M).adjoint();
  }
  return t;
}

CMatrix ckm_matrix(double t12, double t13, double t23, double delta) {
  const double c12 = std::cos(t12), s12 = std::sin(t12), c13 = std::cos(t13), s13 = std::sin(t13);
  const double c23 = std::cos(t23), s23 = std::sin(t23);
  const cplx e = std::exp(kI * delta);
  CMatrix v(3, 3);
  v << c12 * c13, s12 * c13, s13 / e,
      -s12 * c23 - c12 * s23 * s13 * e, c12 * c23 - s12 * s23 * s13 * e, s23 * c13,
      s12 * s23 - c12 * c23 * s13 * e, -c12 * s23 - s12 * c23 * s13 * e, c23 * c13;
  return v;
}

ModelReport build_model_report(const FiniteTriple& triple, const SpectralConstants& constants,
                               const std::optional<RMatrix>& P) {
  ModelReport r;
  r.constants = constants;
  r.gauge = gauge_group(triple.algebra);
  r.fermions = fermion_table(triple);
  r.couplings = coupling_constants(triple.algebra, triple.mu, constants.n, constants.F4, constants.Lambda);
  r.abelian = abelian_sector(triple.algebra, triple.mu, P);
  if (auto eps = particle_half(triple)) {
    std::optional<RVector> charges;
    if (P && r.abelian.N > 0) charges = charges_from_P(r.abelian, *P, 0);
    r.anomalies = anomaly_check(triple.algebra, *eps, charges);
  } else {
    r.flags.push_back("no S0 split: anomaly conditions not evaluated");
  }
  r.higgs = higgs_fields(triple, constants.X);
  r.potential = scalar_potential(triple, r.higgs, constants);
  r.intersection = intersection_form(triple.algebra, triple.mu);
  r.intersection_det = integer_determinant(r.intersection);
  Representation rep(triple.algebra, triple.mu);
  r.mass_bound = mass_bound_check(rep, assemble_dirac(rep, triple));
  r.flags.push_back("G is evaluated as (3/2)(2 pi / tr 1) F2 Lambda^2 as written; dimensional analysis suggests its inverse");
  if (!P) r.flags.push_back("no unimodularity matrix supplied: N' defaults to N - 1");
  for (const auto& L : r.higgs.one_forms.links)
    if (L.outside_reconstruction)
      r.flags.push_back("link (" + std::to_string(L.i) + "," + std::to_string(L.k) +
                        ") has p > 1, outside the p <= 1 gauge reconstruction");
  return r;
}

}  // namespace ncg
