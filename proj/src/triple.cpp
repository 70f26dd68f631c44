// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#include "ncg/triple.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "ncg/errors.hpp"
#include "ncg/model.hpp"

namespace ncg {

char field_letter(Field f) {
  switch (f) {
    case Field::R: return 'R';
    case Field::C: return 'C';
    case Field::H: return 'H';
  }
  return '?';
}

Field field_from_letter(char c) {
  switch (c) {
    case 'R': case 'r': return Field::R;
    case 'C': case 'c': return Field::C;
    case 'H': case 'h': return Field::H;
    default: throw InputError(std::string("unknown field '") + c + "', expected R, C or H");
  }
}

std::vector<RepIndex> AlgebraSpec::full_rep_list() const {
  std::vector<RepIndex> out;
  for (int s = 0; s < int(summands.size()); ++s) {
    out.push_back({s, false});
    if (summands[s].field == Field::C) out.push_back({s, true});
  }
  return out;
}

std::vector<RepIndex> AlgebraSpec::rep_list(int mu_size) const {
  if (summands.empty()) throw InputError("algebra has no summands");
  for (const auto& s : summands)
    if (s.n < 1) throw InputError("summand size must be >= 1");
  if (!reps.empty()) {
    for (const auto& r : reps) {
      if (r.summand < 0 || r.summand >= int(summands.size()))
        throw InputError("representation refers to a missing summand");
      if (r.conjugate && summands[r.summand].field != Field::C)
        throw InputError("only complex summands have a distinct conjugate representation");
    }
    if (int(reps.size()) != mu_size)
      throw InputError("representation count does not match the multiplicity matrix size");
    return reps;
  }
  auto full = full_rep_list();
  if (int(full.size()) == mu_size) return full;
  if (int(summands.size()) == mu_size) {
    std::vector<RepIndex> fund;
    for (int s = 0; s < int(summands.size()); ++s) fund.push_back({s, false});
    return fund;
  }
  throw InputError("multiplicity matrix size matches neither the irrep count nor the summand count");
}

int AlgebraSpec::rep_dim(const RepIndex& r) const {
  const auto& s = summands.at(r.summand);
  return s.field == Field::H ? 2 * s.n : s.n;
}

// ------------------------------------------------------------------ quaternions

CMatrix quaternion_omega(int n) {
  CMatrix w = CMatrix::Zero(2, 2);
  w(0, 1) = 1.0;
  w(1, 0) = -1.0;
  return kron(CMatrix::Identity(n, n), w);
}

CMatrix quaternion_embed(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw InputError("quaternion parts differ in shape");
  const int r = int(x.rows()), c = int(x.cols());
  CMatrix q(2 * r, 2 * c);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < c; ++b) {
      q(2 * a, 2 * b) = x(a, b);
      q(2 * a, 2 * b + 1) = -std::conj(y(a, b));
      q(2 * a + 1, 2 * b) = y(a, b);
      q(2 * a + 1, 2 * b + 1) = std::conj(x(a, b));
    }
  return q;
}

bool is_quaternionic(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2) return false;
  const int n = int(m.rows()) / 2;
  CMatrix w = quaternion_omega(n);
  CMatrix back = w * m.conjugate() * w.transpose();
  return (back - m).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

// ------------------------------------------------------------- representation

namespace {

std::vector<int> conj_map(const AlgebraSpec& alg, const std::vector<RepIndex>& reps) {
  std::vector<int> c(reps.size(), -1);
  for (int i = 0; i < int(reps.size()); ++i) {
    Field f = alg.summands[reps[i].summand].field;
    if (f != Field::C) {
      c[i] = i;
      continue;
    }
    for (int k = 0; k < int(reps.size()); ++k)
      if (reps[k].summand == reps[i].summand && reps[k].conjugate != reps[i].conjugate) c[i] = k;
  }
  return c;
}

CMatrix cayley(const CMatrix& x) {
  const auto n = x.rows();
  CMatrix id = CMatrix::Identity(n, n);
  return (id - x) * (id + x).inverse();
}

}  // namespace

void validate_multiplicity(const AlgebraSpec& algebra, const MultiplicityMatrix& mu) {
  const int n = mu.size();
  if (mu.mu.cols() != n) throw InputError("multiplicity matrix must be square");
  auto reps = algebra.rep_list(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mu(i, j) != mu(j, i))
        throw InputError("multiplicity matrix is not symmetric: no real structure exists");
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) any = any || mu(i, j) != 0;
    if (!any) throw InputError("row " + std::to_string(i) + " of the multiplicity matrix is zero");
  }
  auto c = conj_map(algebra, reps);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (c[i] >= 0 && c[j] >= 0 && mu(i, j) * mu(c[i], c[j]) < 0)
        throw InputError("real-algebra sign constraint mu_ij * mu_(conj i)(conj j) >= 0 violated");
}

Representation::Representation(const AlgebraSpec& algebra, const MultiplicityMatrix& mu)
    : algebra_(algebra), mu_(mu) {
  validate_multiplicity(algebra, mu);
  reps_ = algebra.rep_list(mu.size());
  const int n = mu.size();
  for (const auto& r : reps_) dims_.push_back(algebra.rep_dim(r));
  conj_ = conj_map(algebra, reps_);
  block_lookup_.assign(n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (mu(i, j) == 0) continue;
      Block b;
      b.i = i;
      b.j = j;
      b.mult = int(std::llabs(mu(i, j)));
      b.sign = mu(i, j) > 0 ? 1 : -1;
      b.offset = dim_;
      b.dim = dims_[i] * b.mult * dims_[j];
      dim_ += b.dim;
      block_lookup_[i * n + j] = int(blocks_.size());
      blocks_.push_back(b);
    }
  perm_ = CMatrix::Zero(dim_, dim_);
  chi_ = CMatrix::Zero(dim_, dim_);
  for (const auto& b : blocks_) {
    const auto& t = blocks_[block_index(b.j, b.i)];
    const int di = dims_[b.i], dj = dims_[b.j], m = b.mult;
    for (int a = 0; a < di; ++a)
      for (int s = 0; s < m; ++s)
        for (int c = 0; c < dj; ++c) {
          int src = b.offset + (a * m + s) * dj + c;
          int dst = t.offset + (c * m + s) * di + a;
          perm_(dst, src) = 1.0;
        }
    for (int x = 0; x < b.dim; ++x) chi_(b.offset + x, b.offset + x) = double(b.sign);
  }
}

int Representation::block_index(int i, int j) const {
  const int n = rep_count();
  if (i < 0 || j < 0 || i >= n || j >= n) return -1;
  return block_lookup_[i * n + j];
}

CMatrix Representation::rep_matrix(int i, const AlgebraElement& x) const {
  const auto& r = reps_.at(i);
  const CMatrix& m = x.at(r.summand);
  if (m.rows() != dims_[i] || m.cols() != dims_[i])
    throw InputError("algebra element has the wrong size for summand " + std::to_string(r.summand));
  return r.conjugate ? CMatrix(m.conjugate()) : m;
}

CMatrix Representation::pi(const AlgebraElement& x) const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& b : blocks_) {
    CMatrix rho = rep_matrix(b.i, x);
    out.block(b.offset, b.offset, b.dim, b.dim) =
        kron(rho, CMatrix::Identity(b.mult * dims_[b.j], b.mult * dims_[b.j]));
  }
  return out;
}

CMatrix Representation::conj_by_J(const CMatrix& x) const {
  return perm_ * x.conjugate() * perm_.transpose();
}

CMatrix Representation::jpj(const AlgebraElement& y) const { return conj_by_J(pi(y)); }

CMatrix Representation::vertex_projector(int i, int j) const {
  CMatrix p = CMatrix::Zero(dim_, dim_);
  int b = block_index(i, j);
  if (b < 0) return p;
  const auto& bl = blocks_[b];
  p.block(bl.offset, bl.offset, bl.dim, bl.dim).setIdentity();
  return p;
}

CMatrix Representation::summand_unit(int k) const {
  AlgebraElement x;
  for (int s = 0; s < int(algebra_.summands.size()); ++s) {
    int d = algebra_.rep_dim({s, false});
    x.push_back(s == k ? CMatrix(CMatrix::Identity(d, d)) : CMatrix(CMatrix::Zero(d, d)));
  }
  return pi(x);
}

AlgebraElement Representation::random_element(std::mt19937_64& rng) const {
  AlgebraElement x;
  for (const auto& s : algebra_.summands) {
    switch (s.field) {
      case Field::R: x.push_back(random_matrix(rng, s.n, s.n).real().cast<cplx>()); break;
      case Field::C: x.push_back(random_matrix(rng, s.n, s.n)); break;
      case Field::H:
        x.push_back(quaternion_embed(random_matrix(rng, s.n, s.n), random_matrix(rng, s.n, s.n)));
        break;
    }
  }
  return x;
}

AlgebraElement Representation::random_unitary(std::mt19937_64& rng) const {
  AlgebraElement x = random_element(rng);
  for (auto& m : x) {
    CMatrix ah = 0.5 * (m - m.adjoint());
    m = cayley(ah);
  }
  return x;
}

AlgebraElement Representation::unit() const {
  AlgebraElement x;
  for (int s = 0; s < int(algebra_.summands.size()); ++s) {
    int d = algebra_.rep_dim({s, false});
    x.push_back(CMatrix::Identity(d, d));
  }
  return x;
}

CMatrix Representation::block(const CMatrix& x, int i, int j, int k, int l) const {
  int a = block_index(i, j), b = block_index(k, l);
  if (a < 0 || b < 0) throw InputError("requested block of an absent vertex");
  const auto& ba = blocks_[a];
  const auto& bb = blocks_[b];
  return x.block(ba.offset, bb.offset, ba.dim, bb.dim);
}

Representation build_representation(const AlgebraSpec& algebra, const MultiplicityMatrix& mu) {
  return Representation(algebra, mu);
}

// ---------------------------------------------------------------------- Dirac

namespace {

std::string key_str(const BlockKey& k) {
  std::ostringstream os;
  os << "(" << k.i << "," << k.k << ";" << k.j << ")";
  return os.str();
}

}  // namespace

CMatrix assemble_delta(const Representation& rep, const FiniteTriple& triple) {
  CMatrix delta = CMatrix::Zero(rep.dim(), rep.dim());
  for (const auto& [key, m] : triple.dirac_blocks) {
    const int i = key.i, k = key.k, j = key.j;
    if (i == k) throw InvariantError("Dirac block " + key_str(key) + " joins a vertex to itself");
    int bi = rep.block_index(i, j), bk = rep.block_index(k, j);
    if (bi < 0 || bk < 0) throw InputError("Dirac block " + key_str(key) + " touches an absent vertex");
    const auto& vi = rep.blocks()[bi];
    const auto& vk = rep.blocks()[bk];
    if (vi.sign == vk.sign)
      throw InvariantError("Dirac block " + key_str(key) + " links vertices of the same chirality");
    const int dj = rep.rep_dim(j);
    if (m.rows() != vi.mult * rep.rep_dim(i) || m.cols() != vk.mult * rep.rep_dim(k))
      throw InputError("Dirac block " + key_str(key) + " has the wrong shape");
    CMatrix b = kron(m, CMatrix::Identity(dj, dj));
    delta.block(vi.offset, vk.offset, vi.dim, vk.dim) += b;
    delta.block(vk.offset, vi.offset, vk.dim, vi.dim) += b.adjoint();
  }
  return delta;
}

CMatrix assemble_dirac(const Representation& rep, const FiniteTriple& triple) {
  CMatrix delta = assemble_delta(rep, triple);
  return delta + rep.conj_by_J(delta);
}

CMatrix assemble_dirac(const FiniteTriple& triple) {
  Representation rep(triple.algebra, triple.mu);
  return assemble_dirac(rep, triple);
}

DiracSplit decompose_dirac(const Representation& rep, const CMatrix& D, double tol) {
  if (D.rows() != rep.dim() || D.cols() != rep.dim())
    throw InputError("Dirac operator has the wrong dimension");
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  CMatrix vert = CMatrix::Zero(rep.dim(), rep.dim());
  CMatrix hor = CMatrix::Zero(rep.dim(), rep.dim());
  std::vector<std::string> bad;
  for (const auto& a : rep.blocks())
    for (const auto& b : rep.blocks()) {
      auto blk = D.block(a.offset, b.offset, a.dim, b.dim);
      if (blk.size() == 0 || blk.cwiseAbs().maxCoeff() <= tol * scale) continue;
      std::ostringstream os;
      os << "(" << a.i << "," << a.j << ")<-(" << b.i << "," << b.j << ")";
      if (a.i == b.i && a.j == b.j) bad.push_back(os.str() + " diagonal");
      else if (a.j == b.j) vert.block(a.offset, b.offset, a.dim, b.dim) = blk;
      else if (a.i == b.i) hor.block(a.offset, b.offset, a.dim, b.dim) = blk;
      else bad.push_back(os.str());
    }
  if (!bad.empty()) {
    std::string msg = "Dirac operator violates the first-order block structure at";
    for (const auto& s : bad) msg += " " + s;
    throw DecompositionError(msg);
  }
  CMatrix mirror = rep.conj_by_J(vert);
  double err = (mirror - hor).cwiseAbs().maxCoeff();
  if (err > tol * scale) {
    std::ostringstream os;
    os << "horizontal part is not J delta J^-1 (residual " << err << ")";
    throw DecompositionError(os.str());
  }
  return {vert, mirror};
}

std::map<BlockKey, CMatrix> blocks_from_delta(const Representation& rep, const CMatrix& delta,
                                              double tol) {
  std::map<BlockKey, CMatrix> out;
  const int n = rep.rep_count();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) {
        if (rep.block_index(i, j) < 0 || rep.block_index(k, j) < 0) continue;
        CMatrix b = rep.block(delta, i, j, k, j);
        if (b.size() == 0 || b.cwiseAbs().maxCoeff() <= tol) continue;
        const int dj = rep.rep_dim(j);
        const int r = int(b.rows()) / dj, c = int(b.cols()) / dj;
        CMatrix m(r, c);
        for (int x = 0; x < r; ++x)
          for (int y = 0; y < c; ++y) m(x, y) = b(x * dj, y * dj);
        if ((kron(m, CMatrix::Identity(dj, dj)) - b).cwiseAbs().maxCoeff() > tol * std::max(1.0, b.cwiseAbs().maxCoeff()))
          throw DecompositionError("vertical block is not of the form M (x) I in column " + std::to_string(j));
        out[{i, k, j}] = m;
      }
  return out;
}

// -------------------------------------------------------------------- diagram

Diagram diagram_of(const FiniteTriple& triple) {
  Representation rep(triple.algebra, triple.mu);
  Diagram d;
  d.rep_count = rep.rep_count();
  for (const auto& b : rep.blocks()) d.vertices.push_back({b.i, b.j, b.sign, b.mult});
  for (const auto& [key, m] : triple.dirac_blocks) {
    if (opnorm(m) < 1e-14) continue;
    int i = std::min(key.i, key.k), k = std::max(key.i, key.k);
    d.links.push_back({Diagram::LinkKind::Vertical, i, key.j, k, key.j});
    d.links.push_back({Diagram::LinkKind::Horizontal, key.j, i, key.j, k});
  }
  std::sort(d.vertices.begin(), d.vertices.end());
  std::sort(d.links.begin(), d.links.end());
  d.links.erase(std::unique(d.links.begin(), d.links.end()), d.links.end());
  return d;
}

FiniteTriple triple_from_diagram(const AlgebraSpec& algebra, const Diagram& diagram,
                                 const std::map<BlockKey, CMatrix>& blocks) {
  FiniteTriple t;
  t.algebra = algebra;
  const int n = diagram.rep_count;
  t.mu.mu = IMatrix::Zero(n, n);
  std::map<std::pair<int, int>, int> sign;
  for (const auto& v : diagram.vertices) {
    if (v.mult < 1) throw InputError("diagram vertex with non-positive multiplicity");
    t.mu.mu(v.i, v.j) = v.sign * v.mult;
    sign[{v.i, v.j}] = v.sign;
  }
  std::set<Diagram::Link> vertical, horizontal;
  for (const auto& l : diagram.links) {
    auto s1 = sign.find({l.a1, l.b1}), s2 = sign.find({l.a2, l.b2});
    if (s1 == sign.end() || s2 == sign.end()) throw InputError("diagram link touches a missing vertex");
    if (s1->second == s2->second) throw InvariantError("diagram link joins vertices of equal sign");
    if (l.kind == Diagram::LinkKind::Vertical) {
      if (l.b1 != l.b2 || l.a1 == l.a2) throw InvariantError("vertical link must stay in one column");
      vertical.insert(l);
    } else {
      if (l.a1 != l.a2 || l.b1 == l.b2) throw InvariantError("horizontal link must stay in one row");
      horizontal.insert(l);
    }
  }
  for (const auto& l : vertical) {
    Diagram::Link mirror{Diagram::LinkKind::Horizontal, l.b1, l.a1, l.b2, l.a2};
    if (!horizontal.count(mirror)) throw InvariantError("diagram is not symmetric under transposition");
  }
  if (horizontal.size() != vertical.size())
    throw InvariantError("diagram is not symmetric under transposition");
  for (const auto& l : vertical) {
    BlockKey key{l.a1, l.a2, l.b1};
    auto it = blocks.find(key);
    if (it != blocks.end()) {
      t.dirac_blocks[key] = it->second;
      continue;
    }
    auto rt = blocks.find({l.a2, l.a1, l.b1});
    if (rt == blocks.end()) throw InputError("no Dirac block supplied for vertical link " + key_str(key));
    t.dirac_blocks[key] = rt->second.adjoint();
  }
  for (const auto& [key, m] : blocks) {
    BlockKey norm{std::min(key.i, key.k), std::max(key.i, key.k), key.j};
    if (!t.dirac_blocks.count(norm)) throw InputError("Dirac block " + key_str(key) + " has no link in the diagram");
  }
  return t;
}

// --------------------------------------------------------------------- axioms

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const AxiomCheck& AxiomReport::get(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InputError("no axiom check named " + name);
}

std::optional<std::map<std::pair<int, int>, int>> s0_split(const FiniteTriple& triple, std::string* note) {
  Representation rep(triple.algebra, triple.mu);
  auto set_note = [&](const std::string& s) {
    if (note) *note = s;
  };
  // Edge parity: 1 = colours differ, 0 = colours agree.
  std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, int>>> adj;
  std::set<std::pair<int, int>> linked;
  for (const auto& b : rep.blocks()) adj[{b.i, b.j}];
  for (const auto& b : rep.blocks())
    if (b.i != b.j) adj[{b.i, b.j}].push_back({{b.j, b.i}, 1});
  for (const auto& [key, m] : triple.dirac_blocks) {
    if (opnorm(m) < 1e-14) continue;
    std::pair<int, int> v1{key.i, key.j}, v2{key.k, key.j};
    std::pair<int, int> h1{key.j, key.i}, h2{key.j, key.k};
    adj[v1].push_back({v2, 0});
    adj[v2].push_back({v1, 0});
    adj[h1].push_back({h2, 0});
    adj[h2].push_back({h1, 0});
    linked.insert(v1); linked.insert(v2); linked.insert(h1); linked.insert(h2);
  }
  for (const auto& b : rep.blocks()) {
    if (b.i != b.j) continue;
    if (b.mult % 2) {
      set_note("diagonal vertex (" + std::to_string(b.i) + "," + std::to_string(b.i) +
               ") has odd multiplicity and cannot be split as nu + nu*");
      return std::nullopt;
    }
    if (linked.count({b.i, b.i})) {
      set_note("diagonal vertex (" + std::to_string(b.i) + "," + std::to_string(b.i) +
               ") carries links; the vertex-level test does not resolve its multiplicity split");
      return std::nullopt;
    }
  }
  std::map<std::pair<int, int>, int> colour;
  for (const auto& [start, edges] : adj) {
    if (colour.count(start)) continue;
    colour[start] = 0;
    std::queue<std::pair<int, int>> q;
    q.push(start);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (const auto& [w, parity] : adj[v]) {
        int want = colour[v] ^ parity;
        auto it = colour.find(w);
        if (it == colour.end()) {
          colour[w] = want;
          q.push(w);
        } else if (it->second != want) {
          set_note("links join a vertex (" + std::to_string(w.first) + "," + std::to_string(w.second) +
                   ") to its own transpose class; no particle/antiparticle split exists");
          return std::nullopt;
        }
      }
    }
  }
  set_note("particle/antiparticle split found");
  return colour;
}

bool s0_declared(const FiniteTriple& triple, const IMatrix& eps, std::string* note) {
  auto set_note = [&](const std::string& s) {
    if (note) *note = s;
  };
  const int n = triple.mu.size();
  if (eps.rows() != n || eps.cols() != n) throw InputError("particle matrix has the wrong size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (eps(i, j) + eps(j, i) != triple.mu(i, j)) {
        set_note("mu is not epsilon + epsilon^T");
        return false;
      }
      if (eps(i, j) != 0 && (eps(i, j) > 0) != (triple.mu(i, j) > 0)) {
        set_note("particle multiplicities do not carry the chirality signs of mu");
        return false;
      }
    }
  // 1 particle, -1 antiparticle, 0 mixed (diagonal).
  auto kind = [&](int i, int j) { return i == j ? 0 : (eps(i, j) != 0 ? 1 : -1); };
  for (const auto& [key, m] : triple.dirac_blocks) {
    if (opnorm(m) < 1e-14) continue;
    int a = kind(key.i, key.j), b = kind(key.k, key.j);
    if (a == 0 || b == 0) {
      set_note("a link touches a diagonal vertex; the split cannot be decided at vertex level");
      return false;
    }
    if (a != b) {
      set_note("link (" + std::to_string(key.i) + "," + std::to_string(key.j) + ")-(" + std::to_string(key.k) +
               "," + std::to_string(key.j) + ") joins a particle to an antiparticle");
      return false;
    }
  }
  set_note("declared particle split is compatible with D");
  return true;
}

std::optional<std::map<std::pair<int, int>, int>> s0_colouring(const FiniteTriple& triple) {
  if (!triple.particles) return s0_split(triple);
  if (!s0_declared(triple, *triple.particles)) return std::nullopt;
  std::map<std::pair<int, int>, int> c;
  const int n = triple.mu.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (triple.mu(i, j) != 0) c[{i, j}] = (i == j || (*triple.particles)(i, j) != 0) ? 0 : 1;
  return c;
}

AxiomReport validate_operator(const Representation& rep, const CMatrix& D, double tol,
                              const FiniteTriple* triple) {
  AxiomReport r;
  const int n = rep.dim();
  if (D.rows() != n || D.cols() != n) throw InputError("Dirac operator has the wrong dimension");
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix& chi = rep.chirality();
  const CMatrix& P = rep.J_permutation();
  const double dn = std::max(1.0, opnorm(D));
  auto add = [&](const std::string& name, double res) { r.checks.push_back({name, res, res < tol}); };

  add("hermitian", opnorm(D - D.adjoint()) / dn);
  add("chirality_anticommutes", opnorm(chi * D + D * chi) / dn);
  add("J_commutes_D", opnorm(rep.conj_by_J(D) - D) / dn);
  add("J_squared", opnorm(P * P.conjugate() - id));
  add("chi_squared", opnorm(chi * chi - id));
  add("J_commutes_chi", opnorm(rep.conj_by_J(chi) - chi));

  std::mt19937_64 rng(20260511);
  double order0 = 0.0, order1 = 0.0;
  for (int t = 0; t < 20; ++t) {
    AlgebraElement a = rep.random_element(rng), b = rep.random_element(rng);
    CMatrix pa = rep.pi(a), jb = rep.jpj(b);
    double s = std::max(1.0, opnorm(pa)) * std::max(1.0, opnorm(jb));
    order0 = std::max(order0, opnorm(pa * jb - jb * pa) / s);
    CMatrix da = D * pa - pa * D;
    order1 = std::max(order1, opnorm(da * jb - jb * da) / (s * dn));
  }
  add("order_zero", order0);
  add("first_order", order1);

  // chi = sum_{kl} s_kl pi(1_k) J pi(1_l) J^-1 with s_kl read off the sign of mu.
  const int ns = int(rep.algebra().summands.size());
  std::vector<int> s(ns * ns, 0);
  for (const auto& b : rep.blocks()) {
    int k = rep.reps()[b.i].summand, l = rep.reps()[b.j].summand;
    if (s[k * ns + l] == 0) s[k * ns + l] = b.sign;
  }
  CMatrix recon = CMatrix::Zero(n, n);
  std::vector<CMatrix> units, junits;
  for (int k = 0; k < ns; ++k) {
    units.push_back(rep.summand_unit(k));
    junits.push_back(rep.conj_by_J(units.back()));
  }
  for (int k = 0; k < ns; ++k)
    for (int l = 0; l < ns; ++l)
      if (s[k * ns + l]) recon += double(s[k * ns + l]) * units[k] * junits[l];
  add("orientability", opnorm(recon - chi));

  r.intersection = intersection_form(rep.algebra(), rep.mu());
  r.poincare_determinant = integer_determinant(r.intersection);
  r.checks.push_back({"poincare", double(std::llabs(r.poincare_determinant)), r.poincare_determinant != 0});

  if (triple) {
    std::string intrinsic_note;
    r.s0_intrinsic = s0_split(*triple, &intrinsic_note).has_value();
    if (triple->particles) {
      r.s0_real = s0_declared(*triple, *triple->particles, &r.s0_note);
      if (!r.s0_real && r.s0_intrinsic)
        r.s0_note += "; a different particle assignment would give a valid grading";
    } else {
      r.s0_real = r.s0_intrinsic;
      r.s0_note = intrinsic_note;
    }
  } else {
    r.s0_note = "no block data; S0 test skipped";
  }
  return r;
}

AxiomReport validate_axioms(const FiniteTriple& triple, double tol) {
  Representation rep(triple.algebra, triple.mu);
  CMatrix D = assemble_dirac(rep, triple);
  return validate_operator(rep, D, tol, &triple);
}

// ------------------------------------------------------------------ one-forms

CMatrix derived_field(const Representation& rep, int i, int k, const CMatrix& phi) {
  auto omega = [&](int r) -> CMatrix {
    const auto& ri = rep.reps()[r];
    const int d = rep.rep_dim(r);
    if (rep.algebra().summands[ri.summand].field == Field::H) return quaternion_omega(d / 2);
    return CMatrix::Identity(d, d);
  };
  return omega(i) * phi.conjugate() * omega(k).transpose();
}

namespace {

// M_{ik,j} for any ordered pair, using the stored (min,max) block.
std::optional<CMatrix> oriented_block(const FiniteTriple& t, int i, int k, int j) {
  if (i < k) {
    auto it = t.dirac_blocks.find({i, k, j});
    if (it == t.dirac_blocks.end()) return std::nullopt;
    return it->second;
  }
  auto it = t.dirac_blocks.find({k, i, j});
  if (it == t.dirac_blocks.end()) return std::nullopt;
  return CMatrix(it->second.adjoint());
}

CMatrix omega_of(const Representation& rep, int r) {
  const auto& ri = rep.reps()[r];
  const int d = rep.rep_dim(r);
  if (rep.algebra().summands[ri.summand].field == Field::H) return quaternion_omega(d / 2);
  return CMatrix::Identity(d, d);
}

}  // namespace

OneFormSpace one_form_space(const FiniteTriple& triple, double X) {
  if (!(X > 0)) throw InputError("one-form normalisation X must be positive");
  Representation rep(triple.algebra, triple.mu);
  OneFormSpace out;
  out.X = X;
  const int n = rep.rep_count();
  std::set<std::pair<int, int>> pairs;
  for (const auto& [key, m] : triple.dirac_blocks)
    if (opnorm(m) >= 1e-14) pairs.insert({std::min(key.i, key.k), std::max(key.i, key.k)});
  std::set<std::pair<int, int>> done;
  for (const auto& pr : pairs) {
    if (done.count(pr)) continue;
    const int i = pr.first, k = pr.second;
    done.insert(pr);
    // Conjugate member of the orbit, kept with the orientation (c(i), c(k)).
    std::optional<std::pair<int, int>> partner;
    int ci = rep.conj_rep(i), ck = rep.conj_rep(k);
    if (ci >= 0 && ck >= 0) {
      std::pair<int, int> img{std::min(ci, ck), std::max(ci, ck)};
      if (img != pr && pairs.count(img)) {
        partner = std::make_pair(ci, ck);
        done.insert(img);
      }
    }
    const int di = rep.rep_dim(i), dk = rep.rep_dim(k);
    struct Col {
      int member, j, mi, mk;
    };
    std::vector<Col> cols;
    std::vector<double> weights;
    std::vector<cplx> dummy;
    // Build the reshaped matrix R: rows (a,b), columns (member, j, s, t).
    std::vector<std::vector<cplx>> R(di * dk);
    auto append = [&](int member, int j, const CMatrix& blk, int mi, int mk) {
      cols.push_back({member, j, mi, mk});
      for (int a = 0; a < di; ++a)
        for (int b = 0; b < dk; ++b)
          for (int s = 0; s < mi; ++s)
            for (int t = 0; t < mk; ++t) R[a * dk + b].push_back(blk(a * mi + s, b * mk + t));
      for (int s = 0; s < mi * mk; ++s) weights.push_back(double(rep.rep_dim(j)));
    };
    for (int j = 0; j < n; ++j) {
      auto blk = oriented_block(triple, i, k, j);
      if (!blk) continue;
      append(0, j, *blk, int(std::llabs(triple.mu(i, j))), int(std::llabs(triple.mu(k, j))));
    }
    if (partner) {
      const int pi_ = partner->first, pk = partner->second;
      CMatrix oi = omega_of(rep, pi_), ok = omega_of(rep, pk);
      for (int j = 0; j < n; ++j) {
        auto blk = oriented_block(triple, pi_, pk, j);
        if (!blk) continue;
        const int mi = int(std::llabs(triple.mu(pi_, j))), mk = int(std::llabs(triple.mu(pk, j)));
        CMatrix li = kron(oi.transpose(), CMatrix::Identity(mi, mi));
        CMatrix rk = kron(ok, CMatrix::Identity(mk, mk));
        CMatrix tr = li * blk->conjugate() * rk;
        append(1, j, tr, mi, mk);
      }
    }
    const int width = int(weights.size());
    auto inner = [&](const std::vector<cplx>& u, const std::vector<cplx>& v) {
      cplx s = 0.0;
      for (int c = 0; c < width; ++c) s += weights[c] * std::conj(u[c]) * v[c];
      return s;
    };
    double scale = 0.0;
    for (const auto& row : R) scale = std::max(scale, std::sqrt(std::abs(inner(row, row))));
    std::vector<std::vector<cplx>> basis;
    for (const auto& row : R) {
      std::vector<cplx> v = row;
      for (const auto& f : basis) {
        cplx c = inner(f, v) / X;
        for (int q = 0; q < width; ++q) v[q] -= c * f[q];
      }
      double nv = std::sqrt(std::abs(inner(v, v)));
      if (nv < 1e-10 * std::max(1.0, scale)) continue;
      for (auto& z : v) z *= std::sqrt(X) / nv;
      basis.push_back(v);
    }
    OneFormLink link;
    link.i = i;
    link.k = k;
    link.multiplicity = int(basis.size());
    link.outside_reconstruction = link.multiplicity > 1;
    if (partner) link.derived.push_back(*partner);
    link.derived_M.resize(partner ? 1 : 0);
    for (const auto& f : basis) {
      CMatrix E(di, dk);
      for (int a = 0; a < di; ++a)
        for (int b = 0; b < dk; ++b) E(a, b) = inner(f, R[a * dk + b]) / X;
      link.E.push_back(E);
      std::map<int, CMatrix> own, der;
      int pos = 0;
      for (const auto& c : cols) {
        CMatrix m(c.mi, c.mk);
        for (int s = 0; s < c.mi; ++s)
          for (int t = 0; t < c.mk; ++t) m(s, t) = f[pos + s * c.mk + t];
        pos += c.mi * c.mk;
        if (c.member == 0) own[c.j] = m;
        else der[c.j] = m.conjugate();
      }
      link.M.push_back(own);
      if (partner) link.derived_M[0].push_back(der);
    }
    out.dimension += (long long)link.multiplicity * di * dk;
    out.links.push_back(std::move(link));
  }
  return out;
}

}  // namespace ncg
