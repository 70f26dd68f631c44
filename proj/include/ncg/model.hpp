// SPDX-License-Identifier: MIT
// Copyright (c) 2026 The ncg-forge authors

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncg/linalg.hpp"
#include "ncg/triple.hpp"

namespace ncg {

// ------------------------------------------------------------------ topology

// Exact determinant by fraction-free Gaussian elimination.
long long integer_determinant(const IMatrix& m);

// Conjugate irreps merged into their summand, H rows and columns doubled.
// Rows follow the summand order of the algebra.
IMatrix intersection_form(const AlgebraSpec& algebra, const MultiplicityMatrix& mu);

// ------------------------------------------------------------- gauge content

struct GaugeFactor {
  int summand = 0;
  Field field = Field::C;
  int n = 1;
  std::string name;  // U(n), O(n), Sp(n); Sp(1) printed as SU(2)
  bool abelian = false;
};

std::vector<GaugeFactor> gauge_group(const AlgebraSpec& algebra);
std::string gauge_group_string(const AlgebraSpec& algebra);

struct FermionRow {
  int i = 0, j = 0;
  long long multiplicity = 0;
  int chirality = 0;
  int particle = 0;  // +1 particle, -1 antiparticle, 0 when no S0 split exists
  int dimension = 0;  // d_i |mu_ij| d_j
};

struct FermionTable {
  std::vector<FermionRow> rows;
  bool s0_real = false;
};

FermionTable fermion_table(const FiniteTriple& triple);

struct Coupling {
  int summand = 0;
  long long row_sum = 0;  // sum_j |mu_ij| d_j over the irreps of the summand
  double g = 0.0;
};

// One entry per non-abelian factor.
std::vector<Coupling> coupling_constants(const AlgebraSpec& algebra, const MultiplicityMatrix& mu,
                                         int n, double F4, double Lambda);

struct AbelianSector {
  IMatrix Q_rep;                 // per-irrep matrix
  std::vector<int> candidates;   // complex summands carrying a U(1)
  RMatrix charges;               // irrep x candidate charge map
  RMatrix Q;                     // candidate basis
  RMatrix kernel;                // columns spanning ker Q
  int N = 0;
  int N_prime = 0;
  int parameter_count = 0;       // N'(N - N')
  // Filled when a unimodularity matrix P is supplied.
  std::optional<double> lambda;
  double p_residual = 0.0;
};

AbelianSector abelian_sector(const AlgebraSpec& algebra, const MultiplicityMatrix& mu,
                             const std::optional<RMatrix>& P = std::nullopt, double tol = 1e-9);

// Per-irrep abelian charges B^i obtained from a column of P.
RVector charges_from_P(const AbelianSector& sector, const RMatrix& P, int column = 0);

struct AnomalyReport {
  double mixed_gravitational = 0.0;
  std::vector<std::pair<int, double>> rigid;   // (irrep, residual) for d_i >= 3
  std::vector<std::pair<int, double>> linear;  // (irrep, residual) for d_i >= 2
  double cubic = 0.0;
  // Charge-free form: linear conditions as rows over B, cubic as monomial
  // coefficients keyed by sorted irrep triples.
  RMatrix linear_rows;
  RVector mixed_row;
  std::map<std::vector<int>, double> cubic_poly;
  bool anomaly_free(double tol = 1e-9) const;
};

// epsilon is the particle half of mu, indexed by irreps.
AnomalyReport anomaly_check(const AlgebraSpec& algebra, const IMatrix& epsilon,
                            const std::optional<RVector>& charges = std::nullopt);

// Particle half of mu from the S0 colouring, or nullopt.
std::optional<IMatrix> particle_half(const FiniteTriple& triple);

// ---------------------------------------------------------------- constants

struct SpectralConstants {
  double F0 = 0.0, F2 = 1.0, F4 = 1.0, Lambda = 1.0, tr1 = 4.0;
  int n = 4;
  double G = 0.0;
  double Lambda_c = 0.0;
  double mu_scalar = 0.0;
  double lambda_norm = 0.0;
  double X = 0.0;
};

SpectralConstants spectral_constants(double F0, double F2, double F4, double Lambda, double tr1, int n);

// ----------------------------------------------------------------- Higgs

enum class HiggsType { Complex, Real, Quaternionic, ComplexRH };

const char* higgs_type_name(HiggsType t);

struct HiggsField {
  int i = 0, j = 0, p = 0;
  int rows = 0, cols = 0;
  HiggsType type = HiggsType::Complex;
  bool derived = false;             // fixed by an independent field of the same orbit
  int source = -1;                  // index of the independent field when derived
  std::vector<BlockKey> links;      // vertical links carrying the field
  std::string note;
};

struct HiggsContent {
  OneFormSpace one_forms;
  std::vector<HiggsField> fields;   // independent fields first, then derived ones
  std::string law = "Phi_ij -> u_i Phi_ij u_j^-1";
};

HiggsContent higgs_fields(const FiniteTriple& triple, double X = 1.0);

// Values of the independent fields, indexed like the independent entries of
// HiggsContent::fields.
using HiggsValues = std::vector<CMatrix>;

// Field value at the vacuum Phi = E (reproduces D).
HiggsValues vacuum_values(const HiggsContent& content);
HiggsValues random_higgs_values(const Representation& rep, const HiggsContent& content,
                                std::mt19937_64& rng);
// Field on the oriented pair (a, b); zero matrix when absent.
CMatrix oriented_field(const Representation& rep, const HiggsContent& content,
                       const HiggsValues& values, int a, int b, int p);

// Vertical blocks sum_p Phi^p (x) M^p_j and the full operator Delta + J Delta J^-1.
std::map<BlockKey, CMatrix> yukawa_blocks(const FiniteTriple& triple, const HiggsContent& content,
                                          const HiggsValues& values);
CMatrix yukawa_operator(const FiniteTriple& triple, const HiggsContent& content,
                        const HiggsValues& values);

// Gauge action on the fields: Phi_ab -> u_a Phi_ab u_b^-1 per irrep.
HiggsValues gauge_transform_higgs(const Representation& rep, const HiggsContent& content,
                                  const HiggsValues& values, const AlgebraElement& u);

// --------------------------------------------------------------- potential

enum class LoopKind { Link, Pair, Chain, Corner, Rectangle, Square };

const char* loop_kind_name(LoopKind k);


struct PotentialTerm {
  LoopKind kind = LoopKind::Pair;
  std::vector<std::pair<int, int>> walk;  // canonical vertex sequence
  int walks = 0;                          // rooted walks aggregated in this class
  bool mirror = false;                    // horizontal version of a vertical loop
  // M-chain traces per multiplicity assignment (one entry per step).
  std::vector<std::pair<std::vector<int>, cplx>> m_traces;
  std::string monomial;
};

struct PotentialCoefficients {
  SpectralConstants constants;
  double mass_coefficient = 0.0;      // -mu^2/2
  double quadratic_prefactor = 0.0;   // -F2 Lambda^{n-2} / (2 pi)^{n/2}
  double lambda_norm = 0.0;
  bool particle_half = false;         // loops restricted to particles, doubled
  std::vector<PotentialTerm> quadratic;
  std::vector<PotentialTerm> quartic;
  // Aggregated coefficients keyed by monomial, lambda_norm included.
  std::map<std::string, cplx> kappa;
  std::map<std::string, cplx> lambda;
  // Per-kind totals of walks, for reporting.
  std::map<std::string, int> kind_walks;
};

PotentialCoefficients scalar_potential(const FiniteTriple& triple, const HiggsContent& content,
                                       const SpectralConstants& constants);

// Potential evaluated from the loop terms.
double potential_value(const FiniteTriple& triple, const HiggsContent& content,
                       const PotentialCoefficients& coeffs, const HiggsValues& values);
// Independent evaluation: -c2 tr(Phi~^2) + lambda_norm tr(Phi~^4).
double potential_direct(const FiniteTriple& triple, const HiggsContent& content,
                        const SpectralConstants& constants, const HiggsValues& values);
// Quartic part only, from the loop terms.
double quartic_value(const FiniteTriple& triple, const HiggsContent& content,
                     const PotentialCoefficients& coeffs, const HiggsValues& values);

// ---------------------------------------------------------------- SSB bound

struct MassBound {
  double m_b = 0.0;
  double m_f = 0.0;
  double ratio = 0.0;   // m_b^2 / m_f^2, 0 when m_f = 0
  bool holds = true;
};

// Real basis of the antihermitian part of the algebra, one list per summand.
std::vector<AlgebraElement> gauge_generators(const AlgebraSpec& algebra);

MassBound mass_bound_check(const Representation& rep, const CMatrix& vtilde, double slack = 1e-9);

// ----------------------------------------------------------- standard model

struct StandardModelInput {
  CMatrix Me, Mu, Md;   // 3x3 mass matrices
  bool leptoquark = false;
  CMatrix leptoquark_phi;   // 3x2, used when leptoquark is set
  CMatrix leptoquark_M;     // 3x3
  int right_neutrinos = 0;  // extra multiplicity added to mu(C, C)
};

// Irreps (C, H, Cbar, M3) with dimensions (1, 2, 1, 3).
AlgebraSpec standard_model_algebra();
MultiplicityMatrix standard_model_mu(int right_neutrinos = 0);
IMatrix standard_model_epsilon();
FiniteTriple standard_model(const StandardModelInput& in);
// Unitary CKM-type matrix from three angles and a phase.
CMatrix ckm_matrix(double t12, double t13, double t23, double delta);

struct ModelReport {
  std::vector<GaugeFactor> gauge;
  FermionTable fermions;
  std::vector<Coupling> couplings;
  AbelianSector abelian;
  std::optional<AnomalyReport> anomalies;
  HiggsContent higgs;
  std::optional<PotentialCoefficients> potential;
  IMatrix intersection;
  long long intersection_det = 0;
  SpectralConstants constants;
  std::optional<MassBound> mass_bound;
  std::vector<std::string> flags;
};

ModelReport build_model_report(const FiniteTriple& triple, const SpectralConstants& constants,
                               const std::optional<RMatrix>& P = std::nullopt);

}  // namespace ncg
