// Exact search and certification of homogeneous polynomial relations among
// three q-series: congruence-subgroup indices and Sturm-type vanishing
// bounds, nullspace computation over the degree-d monomial coefficient
// matrix, vanishing certificates, and the wronskian-ratio constant (psi) with
// its basis-change law.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modcurve/cuspbasis.hpp"
#include "modcurve/qseries.hpp"
#include "modcurve/rational.hpp"

namespace modcurve {

// An ordered triple of q-series (the arguments substituted for X, Y, Z).
// Relation search accepts arbitrary triples, not only pivot-normalized bases.
struct SeriesTriple {
  RatSeries s1, s2, s3;
  static SeriesTriple from_basis(const NormalizedBasis& b) {
    return {b.h1, b.h2, b.h3};
  }
};

// ---------------------------------------------------------------------------
// Congruence-subgroup indices and Sturm bounds.

enum class GroupKind { Gamma0, Gamma1, Custom };

struct GroupSpec {
  GroupKind kind = GroupKind::Gamma1;
  long custom_index = 0;  // meaningful only when kind == Custom

  static GroupSpec gamma0() { return {GroupKind::Gamma0, 0}; }
  static GroupSpec gamma1() { return {GroupKind::Gamma1, 0}; }
  static GroupSpec custom(long k) { return {GroupKind::Custom, k}; }
  bool operator==(const GroupSpec& o) const {
    return kind == o.kind &&
           (kind != GroupKind::Custom || custom_index == o.custom_index);
  }
};

std::string group_text(const GroupSpec& g);

// Accepts "g0", "g1", or "custom:<k>" with k >= 1.
GroupSpec parse_group_spec(const std::string& text);

// Index in SL2(Z): Gamma0: N * prod (1 + 1/p); Gamma1: N^2 * prod (1 - 1/p^2)
// (no +-identification); Custom: the supplied positive index.
long group_index(long N, const GroupSpec& group);

struct SturmBound {
  long level = 1;
  GroupSpec group;
  long index = 1;
  int weight = 2;
  int bound = 1;  // ceil(weight * index / 12)
};

// A weight-w cusp form for the given group and level vanishing through
// q^bound vanishes identically.
SturmBound sturm_bound(long N, int weight, const GroupSpec& group);

// ---------------------------------------------------------------------------
// Homogeneous trivariate polynomials over Z.

// Exponent triple (i, j, k) for X^i Y^j Z^k.
using ExponentTriple = std::array<int, 3>;

// Graded-lexicographic order with X > Y > Z, descending (display order).
struct MonomialOrderDesc {
  bool operator()(const ExponentTriple& a, const ExponentTriple& b) const {
    const int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
  }
};

class HomogeneousPolynomial {
public:
  using TermMap = std::map<ExponentTriple, Int, MonomialOrderDesc>;

  // The zero polynomial of degree 0.
  HomogeneousPolynomial() : degree_(0) {}
  // Zero terms are dropped; every triple must sum to `degree`.
  HomogeneousPolynomial(int degree, TermMap terms);

  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Int coefficient(int i, int j, int k) const;

  // Content 1 and positive leading (graded-lex first) coefficient.
  HomogeneousPolynomial normalized() const;
  bool is_normalized() const;

  // Partial derivative; var: 0 = X, 1 = Y, 2 = Z.  Degree drops by one.
  HomogeneousPolynomial partial(int var) const;

  // Human-readable form in graded-lex print order, e.g. "X^3Z - 2Y^4".
  std::string text() const;

  bool operator==(const HomogeneousPolynomial& o) const {
    return degree_ == o.degree_ && terms_ == o.terms_;
  }

private:
  int degree_;
  TermMap terms_;
};

// Parse the text form produced by HomogeneousPolynomial::text().
HomogeneousPolynomial parse_homogeneous_polynomial(const std::string& text);

// F(s1, s2, s3) as a q-series; reliable window computed from the inputs,
// optionally capped.  Degree must be >= 1.
RatSeries evaluate_form(const HomogeneousPolynomial& F, const SeriesTriple& t,
                        int cap = 0);

// ---------------------------------------------------------------------------
// Basis change.

struct Mat3 {
  Rat a[3][3];
  static Mat3 identity();
  static Mat3 diagonal(const Rat& x, const Rat& y, const Rat& z);
  Rat det() const;
};

struct BasisChange {
  HomogeneousPolynomial poly;  // primitive, sign-normalized
  Rat scalar;                  // raw substituted polynomial = scalar * poly
};

// Substitute variable i -> sum_j M[i][j] * (X,Y,Z)[j] into F; the normalized
// polynomial plus the rational scalar relating it to the raw substitution.
BasisChange change_of_basis(const HomogeneousPolynomial& F, const Mat3& M);

// ---------------------------------------------------------------------------
// Relation search and certificates.

enum class RelationClass { None, UniqueQuartic, HyperellipticSignature,
                           OverDetermined };

std::string relation_class_text(RelationClass c);

struct RelationResult {
  int degree = 0;
  int bound = 0;      // exponent window the nullspace is certified through
  int dimension = 0;  // nullspace dimension
  std::vector<HomogeneousPolynomial> relations;  // primitive, sign-normalized
  RelationClass classification = RelationClass::None;
};

// Exact nullspace of the coefficient matrix of all degree-d monomials in the
// triple, over exponents 1..bound.bound.  Requires every series reliable to
// bound.bound + d.
RelationResult find_relation(const SeriesTriple& t, int d,
                             const SturmBound& bound);
RelationResult find_relation(const NormalizedBasis& basis, int d,
                             const SturmBound& bound);

// True iff every known coefficient of F(t) through bound.bound vanishes.
bool certify_vanishing(const HomogeneousPolynomial& F, const SeriesTriple& t,
                       const SturmBound& bound);
bool certify_vanishing(const HomogeneousPolynomial& F,
                       const NormalizedBasis& basis, const SturmBound& bound);

enum class PsiStatus { Constant, NonConstant, Inconclusive };

std::string psi_status_text(PsiStatus s);

// psi = (theta(s1) * s3 - s1 * theta(s3)) / F_Y(s1, s2, s3): the candidate
// constant c is the ratio of leading coefficients, certified by checking the
// residual numerator - c * denominator through the weight-6 bound.
struct PsiCertificate {
  Rat c;
  int verified_to = 0;
  PsiStatus status = PsiStatus::Inconclusive;
  std::optional<int> first_mismatch;
};

PsiCertificate psi_certificate(const HomogeneousPolynomial& F,
                               const SeriesTriple& t,
                               const SturmBound& bound_w6);
PsiCertificate psi_certificate(const HomogeneousPolynomial& F,
                               const NormalizedBasis& basis,
                               const SturmBound& bound_w6);

}  // namespace modcurve
