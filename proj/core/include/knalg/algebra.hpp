#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "knalg/basis.hpp"
#include "knalg/qcalc.hpp"

namespace knalg {

// Every residue below is taken at the chosen point with its orientation sign, so that the
// sphere reproduces [e_m, e_n] = (n - m) e_(m+n) for e_n = z^(n+1) d/dz with c^0_(m,n) = m - n.
// Structure constants use the shifted band convention: s runs over [-g0, g0] and pairs with
// Omega_(m+n-s).

/// c^s_(m,n) = res((e_m' e_n - e_m e_n') Omega_(m+n-s)). No band restriction is enforced, so
/// out-of-band values can be measured. Throws MissingIndexError when an index is absent.
cplx classicalStructureConstant(const BasisFamily& family, HalfInt m, HalfInt n, HalfInt s,
                                Point p = Point::Plus);

/// chi_(m,n) = (1/12) res(e_m''' e_n).
cplx classicalCocycle(const BasisFamily& family, HalfInt m, HalfInt n, Point p = Point::Plus);

/// gamma_(m,n) = res(A_m' A_n).
cplx heisenbergGamma(const BasisFamily& family, HalfInt m, HalfInt n, Point p = Point::Plus);

/// gamma^q_(m,n) = res((d^q A_m) A_n) with the symmetric q-derivative. Throws for q <= 0 or q == 1.
cplx qHeisenbergGamma(const BasisFamily& family, HalfInt m, HalfInt n, double q);

/// D^s_(m,n)(b, c, d), the residue kernel of one branch of the deformed commutator:
///
///   (kappa/2) res{ q^-c [d-b-c] d^(q^(d-b-c)) e_m(w) e_n(w q^-b)
///                 - q^-c [b] e_m(w q^(b+c-d)) d^(q^-b) e_n(w)
///                 - [c] e_m(w q^(b+c-d)) e_n(w q^b) / w } Omega_(m+n-s)(w)
///
/// Terms whose bracket prefactor has a zero argument are dropped exactly. Evaluated at P+.
cplx qStructureD(const BasisFamily& family, HalfInt m, HalfInt n, HalfInt s, double b, double c, double d,
                 double q);

/// The limit q -> 1 of qStructureD, term by term:
///   (1/2) [(d-b-c) res(e_m' e_n Omega) - b res(e_m e_n' Omega) - c res(e_m e_n Omega / w)].
cplx classicalStructureD(const BasisFamily& family, HalfInt m, HalfInt n, HalfInt s, double b, double c,
                         double d);

/// One of the four branches of the deformed commutator [L^alpha_m, L^beta_n].
struct BranchSpec {
  std::string label;  ///< operator family on the right, e.g. "alpha+beta+1"
  double target;      ///< its numerical value
  int sign;            ///< +1 or -1
  double b;
  double c;
  double d;
};

/// Branch arguments (b, c, d), signs and target labels for given alpha, beta:
///   ((a+1)/2, (b-a)/2,  b+1)  +  alpha+beta+1
///   ((a+1)/2, (-b-a)/2, -b+1) +  -alpha+beta+1
///   ((a-1)/2, (b-a)/2,  b-1)  -  -alpha-beta+1
///   ((a-1)/2, (-b-a)/2, -b-1) -  alpha-beta-1
std::array<BranchSpec, 4> commutatorBranches(double alpha, double beta);

struct BranchCoefficients {
  BranchSpec spec;
  std::vector<std::pair<HalfInt, cplx>> coefficients;  ///< (s, D^s), s ascending over [-g0, g0]
};

/// Operator part and central value of [L^alpha_m, L^beta_n].
struct QCommutatorExpansion {
  HalfInt m;
  HalfInt n;
  DeformationParams params;
  std::array<BranchCoefficients, 4> branches;
  /// Empty when the central coefficients are degenerate for these alpha, beta.
  std::optional<cplx> central;
  /// sum over branches of sign * D^s, the combination that tends to c^s_(m,n) as q -> 1
  cplx signedSum(HalfInt s) const;
};

QCommutatorExpansion qCommutator(const BasisFamily& family, HalfInt m, HalfInt n, const DeformationParams& params);

/// chi^q_(m,n) = -1/(16 ln^2 q) sum_(k=0)^(2g0-m-n) e+_(m,k) e+_(n,2g0-m-n-k)
///               * (C^(alpha,beta)_(m+1)(g0; k) + C^(alpha,-beta)_(m+1)(g0; k)).
/// Zero when 2g0 - m - n < 0. Throws DegenerateParameterError for degenerate alpha, beta.
cplx qCentralTerm(const BasisFamily& family, HalfInt m, HalfInt n, const DeformationParams& params);

/// chi_(m,n) = (1/12) sum_k e+_(m,k) e+_(n,2g0-m-n-k) (x-1) x (x+1), x = m - g0 + k.
cplx classicalLimitCentral(const BasisFamily& family, HalfInt m, HalfInt n);

// ---------------------------------------------------------------------------
// tables

/// Provenance written next to every table.
struct TableMetadata {
  std::string kind;
  int genus = 0;
  HalfInt g0;
  HalfInt range;
  int depth = 0;
  double tol = 1e-9;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<cplx> omega1;
  std::optional<cplx> omega2;
  std::optional<cplx> z0;
  std::string basisSource;
  std::string aNormalization;
};

struct StructureEntry {
  HalfInt m;
  HalfInt n;
  HalfInt s;
  int branch = 0;  ///< 0 for classical tables, 1..4 for deformed branches
  cplx value;
};

/// Sparse (m, n, s[, branch]) -> coefficient map, sorted by (m, n, s, branch).
struct StructureTable {
  TableMetadata metadata;
  std::vector<StructureEntry> entries;
};

struct CentralEntry {
  HalfInt m;
  HalfInt n;
  cplx value;
};

/// Sparse (m, n) -> value map, sorted by (m, n). Used for chi, chi^q, gamma and gamma^q.
struct CentralTable {
  TableMetadata metadata;
  bool deformed = false;
  std::vector<CentralEntry> entries;
};

enum class CentralKind { Cocycle, QCentral, Heisenberg, QHeisenberg };

/// Indices of the family with |n| <= range.
std::vector<HalfInt> indicesUpTo(const BasisFamily& family, HalfInt range);

/// c^s_(m,n) for |m|, |n| <= range and s in [-g0, g0], skipping s whose Omega index is absent.
StructureTable buildClassicalTable(const BasisFamily& family, HalfInt range, TableMetadata metadata);

/// The four branches D^s of every (m, n) with |m|, |n| <= range.
StructureTable buildQTable(const BasisFamily& family, HalfInt range, const DeformationParams& params,
                           TableMetadata metadata);

CentralTable buildCentralTable(const BasisFamily& family, HalfInt range, CentralKind kind,
                               const DeformationParams& params, TableMetadata metadata);

}  // namespace knalg
