// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "ncg/linalg.hpp"

namespace ncg {

enum class Field { R, C, H };

char field_letter(Field f);
Field field_from_letter(char c);

struct Summand {
  Field field = Field::C;
  int n = 1;  // matrix size over the field; H summands act on C^{2n}
};

// An irreducible representation: the fundamental of a summand or, for a
// complex summand, its complex conjugate.
struct RepIndex {
  int summand = 0;
  bool conjugate = false;
  bool operator==(const RepIndex&) const = default;
};

struct AlgebraSpec {
  std::vector<Summand> summands;
  // Optional explicit irreducible-representation list. When empty the list is
  // derived from the size of the multiplicity matrix (see rep_list).
  std::vector<RepIndex> reps;

  // All irreps in declaration order: one for R and H, two for C.
  std::vector<RepIndex> full_rep_list() const;
  // Resolves the irrep list for a multiplicity matrix of the given size.
  std::vector<RepIndex> rep_list(int mu_size) const;
  int rep_dim(const RepIndex& r) const;
};

struct MultiplicityMatrix {
  IMatrix mu;
  int size() const { return int(mu.rows()); }
  long long operator()(int i, int j) const { return mu(i, j); }
};

// One matrix per summand: real entries for R, complex n x n for C, and the
// 2n x 2n complex image of M_n(H) for H.
using AlgebraElement = std::vector<CMatrix>;

struct BlockKey {
  int i = 0, k = 0, j = 0;
  auto operator<=>(const BlockKey&) const = default;
};

struct FiniteTriple {
  AlgebraSpec algebra;
  MultiplicityMatrix mu;
  // M_{ik,j}: (|mu_ij| d_i) x (|mu_kj| d_k). Stored with i < k; the (k,i) block
  // is the adjoint.
  std::map<BlockKey, CMatrix> dirac_blocks;
  // Declared particle half epsilon (mu = epsilon + epsilon^T), if any.
  std::optional<IMatrix> particles;
};

// Concrete block structure of H = sum_{mu_ij != 0} C^{d_i} (x) C^{|mu_ij|} (x) C^{d_j}.
class Representation {
 public:
  Representation(const AlgebraSpec& algebra, const MultiplicityMatrix& mu);

  struct Block {
    int i, j;
    int mult;    // |mu_ij|
    int sign;    // sign(mu_ij)
    int offset;  // first basis index
    int dim;     // d_i * mult * d_j
  };

  int dim() const { return dim_; }
  int rep_count() const { return int(reps_.size()); }
  const std::vector<RepIndex>& reps() const { return reps_; }
  int rep_dim(int i) const { return dims_[i]; }
  const std::vector<int>& rep_dims() const { return dims_; }
  // Conjugate irrep index, or -1 when it is not part of the list.
  int conj_rep(int i) const { return conj_[i]; }
  const AlgebraSpec& algebra() const { return algebra_; }
  const MultiplicityMatrix& mu() const { return mu_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  // Index into blocks(), or -1 when mu_ij = 0.
  int block_index(int i, int j) const;

  // rho_i(x) for an algebra element.
  CMatrix rep_matrix(int i, const AlgebraElement& x) const;
  CMatrix pi(const AlgebraElement& x) const;
  // J pi(y) J^{-1}.
  CMatrix jpj(const AlgebraElement& y) const;
  // J X J^{-1} for a linear operator X.
  CMatrix conj_by_J(const CMatrix& x) const;
  // J = P o (complex conjugation), P a real permutation with P^2 = 1.
  const CMatrix& J_permutation() const { return perm_; }
  const CMatrix& chirality() const { return chi_; }

  // Projector onto H_ij.
  CMatrix vertex_projector(int i, int j) const;
  // pi(1_k) for summand k.
  CMatrix summand_unit(int k) const;

  AlgebraElement random_element(std::mt19937_64& rng) const;
  AlgebraElement random_unitary(std::mt19937_64& rng) const;
  AlgebraElement unit() const;

  // Block of an operator X mapping H_kl to H_ij.
  CMatrix block(const CMatrix& x, int i, int j, int k, int l) const;

 private:
  AlgebraSpec algebra_;
  MultiplicityMatrix mu_;
  std::vector<RepIndex> reps_;
  std::vector<int> dims_;
  std::vector<int> conj_;
  std::vector<Block> blocks_;
  std::vector<int> block_lookup_;
  int dim_ = 0;
  CMatrix perm_;
  CMatrix chi_;
};

// Omega = I_n (x) i sigma_2, the quaternionic structure on C^{2n}.
CMatrix quaternion_omega(int n);
// Embedding of quaternion matrices given complex parts x, y of q = x + y j (any shape).
CMatrix quaternion_embed(const CMatrix& x, const CMatrix& y);
bool is_quaternionic(const CMatrix& m, double tol = 1e-12);

void validate_multiplicity(const AlgebraSpec& algebra, const MultiplicityMatrix& mu);

// Concrete maps of the representation; throws InputError on bad mu.
Representation build_representation(const AlgebraSpec& algebra, const MultiplicityMatrix& mu);

CMatrix assemble_delta(const Representation& rep, const FiniteTriple& triple);
CMatrix assemble_dirac(const FiniteTriple& triple);
CMatrix assemble_dirac(const Representation& rep, const FiniteTriple& triple);

struct DiracSplit {
  CMatrix delta;    // vertical part
  CMatrix jdeltaj;  // J delta J^{-1}, horizontal part
};

DiracSplit decompose_dirac(const Representation& rep, const CMatrix& D, double tol = 1e-10);
// Recover the blocks M_{ik,j} (i < k) from a vertical operator delta.
std::map<BlockKey, CMatrix> blocks_from_delta(const Representation& rep, const CMatrix& delta,
                                              double tol = 1e-10);

struct Diagram {
  struct Vertex {
    int i, j;
    int sign;
    int mult;
    auto operator<=>(const Vertex&) const = default;
  };
  enum class LinkKind { Vertical, Horizontal };
  struct Link {
    LinkKind kind;
    int a1, b1, a2, b2;  // vertices (a1,b1) -- (a2,b2), ordered lexicographically
    auto operator<=>(const Link&) const = default;
  };
  int rep_count = 0;
  std::vector<Vertex> vertices;
  std::vector<Link> links;
  bool operator==(const Diagram&) const = default;
};

Diagram diagram_of(const FiniteTriple& triple);
FiniteTriple triple_from_diagram(const AlgebraSpec& algebra, const Diagram& diagram,
                                 const std::map<BlockKey, CMatrix>& blocks);

struct AxiomCheck {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  long long poincare_determinant = 0;
  IMatrix intersection;
  // Verdict against the declared particle half when present, else intrinsic.
  bool s0_real = false;
  // Whether any vertex-level particle/antiparticle grading exists.
  bool s0_intrinsic = false;
  std::string s0_note;
  bool all_pass() const;
  const AxiomCheck& get(const std::string& name) const;
};

// Full axiom suite for the triple's own Dirac operator.
AxiomReport validate_axioms(const FiniteTriple& triple, double tol = kDefaultTol);
// Same suite for an arbitrary operator D on the triple's Hilbert space.
AxiomReport validate_operator(const Representation& rep, const CMatrix& D,
                              double tol = kDefaultTol, const FiniteTriple* blocks = nullptr);

// Vertex-level S^0-reality test. Returns the particle/antiparticle colouring
// (0 = particle) when it exists.
std::optional<std::map<std::pair<int, int>, int>> s0_split(const FiniteTriple& triple,
                                                          std::string* note = nullptr);
// Colouring from the declared particle half when valid, else s0_split.
std::optional<std::map<std::pair<int, int>, int>> s0_colouring(const FiniteTriple& triple);
// Same test for a fixed particle half epsilon.
bool s0_declared(const FiniteTriple& triple, const IMatrix& epsilon, std::string* note = nullptr);

// One-form space: for each unordered pair i < k with vertical links, the
// decomposition M_{ik,j} = sum_p E^p (x) M^p_j with sum_j d_j tr(M^p* M^q) = X delta.
struct OneFormLink {
  int i = 0, k = 0;
  int multiplicity = 0;                                   // p_ik
  std::vector<CMatrix> E;                                 // d_i x d_k coefficients
  std::vector<std::map<int, CMatrix>> M;                  // per p, per column j
  // Members of the conjugation orbit with derived fields: (i', k') rows.
  std::vector<std::pair<int, int>> derived;
  std::vector<std::vector<std::map<int, CMatrix>>> derived_M;  // per member, per p, per j
  bool outside_reconstruction = false;                    // p_ik > 1
};

struct OneFormSpace {
  double X = 1.0;
  std::vector<OneFormLink> links;
  long long dimension = 0;  // sum p_ik d_i d_k over independent links
};

OneFormSpace one_form_space(const FiniteTriple& triple, double X = 1.0);

// Omega_i conj(phi) Omega_k^{-1}: the field on the conjugate link.
CMatrix derived_field(const Representation& rep, int i, int k, const CMatrix& phi);

}  // namespace ncg
