// Construction of the normalized cusp-form basis {h1, h2, h3} of a
// three-dimensional rational eigenform space, following the three splitting
// shapes of the underlying abelian 3-fold:
//   A   — one eigenform with a totally-real cubic coefficient field,
//   AE  — a quadratic-field eigenform pair plus one rational form,
//   EEE — three rational forms.
// The output is pivot-normalized: h1 = q + O(q^2), h2 = q^2 + O(q^3),
// h3 = q^nu + O(q^{nu+1}) with nu >= 3, and by default fully reduced to the
// unique echelon basis of the span (pivot columns cleared), which is what
// integral q-expansion bases in the literature print.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modcurve/newform.hpp"
#include "modcurve/qseries.hpp"

namespace modcurve {

enum class CaseTag { A, AE, EEE };

std::string case_tag_text(CaseTag t);

// Audit constants recorded while deriving the basis.
struct BasisDerivation {
  // Case A: minimal polynomial x^3 + a x^2 + b x + c of a_2 and friends.
  Rat a, b, c;
  Rat disc_p, disc_dp;   // disc(p), disc(p')
  Rat gamma3;            // coordinate of a_3 on a_2^2
  Rat A_const;           // (2/3) * disc(p) / disc(p')
  // Case AE: a_2 = A2 + B2*sqrt(d) for the quadratic form, c2 for the
  // rational form; branch flag.
  Rat A2, B2, c2, d;
  bool branch_B2_nonzero = false;
  // Case EEE: the chosen ordering (labels) and their a_2 values.
  std::vector<std::string> ordering;
  Rat a2_first, a2_second, a2_third;
  // Shared: leading coefficient of h3 before rescaling to 1, and the raw
  // (pre-echelon) series of the case formulas.
  Rat h3_leading;
  std::vector<RatSeries> raw;
};

struct NormalizedBasis {
  RatSeries h1, h2, h3;
  CaseTag case_tag;
  VanishingOrder ord_h3;
  BasisDerivation derivation;
};

struct BasisOptions {
  // Reduce to the unique echelon basis of the span (recommended; matches
  // printed integral bases and makes relation search deterministic).
  bool echelon_reduce = true;
};

NormalizedBasis build_case_A(const EigenformPackage& f, BasisOptions options = {});
NormalizedBasis build_case_AE(const EigenformPackage& f,
                              const EigenformPackage& g,
                              BasisOptions options = {});
NormalizedBasis build_case_EEE(const EigenformPackage& f1,
                               const EigenformPackage& f2,
                               const EigenformPackage& f3,
                               BasisOptions options = {});

// Dispatch on the field degrees (3 / 2+1 / 1+1+1).
NormalizedBasis build_basis(const std::vector<EigenformPackage>& factors,
                            BasisOptions options = {});

// Series of Tr(beta * a_n) for n = 1..M (rational by construction).
RatSeries trace_series(const EigenformPackage& pkg, const NFElem& beta);

// Coordinate series: the coefficient of x^index of a_n in the power basis.
RatSeries coordinate_series(const EigenformPackage& pkg, int index);

// Unique reduced echelon basis of the rational span of the given series
// (pivots increasing, pivot coefficient 1, pivot columns cleared elsewhere).
// Rows that are zero on the common known window are dropped.
std::vector<RatSeries> reduced_echelon(const std::vector<RatSeries>& rows);

// Reduced echelon basis of the full rational span of the packages' isotypic
// spaces: each degree-m package contributes Tr(x^j a_n) for j = 0..m-1.
// This also covers spaces where the pivot pattern is not (1,2,nu).
std::vector<RatSeries> integral_span_basis(
    const std::vector<EigenformPackage>& pkgs);

// Monomial degree profile: the leading exponents i*nu1 + j*nu2 + k*nu3 of
// the degree-d monomials s1^i s2^j s3^k, with a distinctness flag (when all
// profiles are distinct no degree-d relation can exist).
struct MonomialProfile {
  struct Entry {
    int i, j, k;
    long order;
  };
  std::vector<Entry> entries;  // graded-lex order, X > Y > Z
  bool all_distinct = false;
};

MonomialProfile monomial_order_profile(int nu1, int nu2, int nu3, int degree);
MonomialProfile monomial_order_profile(const NormalizedBasis& basis, int degree);

}  // namespace modcurve
