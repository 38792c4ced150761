// Geometric certification of plane curves given by homogeneous polynomials:
// exact smoothness decision (mod-p resultant certificate with an exact
// rational fallback), tangent-line classification at P = (1:0:0), and
// exhaustive point counting over small prime fields with expected values
// from eigenform traces.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modcurve/newform.hpp"
#include "modcurve/relation.hpp"

namespace modcurve {

struct SmoothnessCertificate {
  enum class Verdict { Smooth, Singular, Undetermined };
  Verdict verdict = Verdict::Undetermined;
  // Present when smoothness was certified by a smooth reduction mod p.
  std::optional<long> witness_prime;
  std::string detail;
};

std::string smoothness_verdict_text(SmoothnessCertificate::Verdict v);

// Decides geometric nonsingularity of V(F) over the rationals.  A smooth
// reduction at one prime not dividing the content is a complete proof; when
// no tested prime certifies, an exact resultant-based decision over Q runs
// (common zeros of the partial derivatives over the algebraic closure).
SmoothnessCertificate check_smooth(const HomogeneousPolynomial& F);

enum class FlexKind { NotOnCurveNormalForm, OrdinaryPoint, Flex, Hyperflex };

std::string flex_kind_text(FlexKind k);

// Classification of P = (1:0:0) read off the coefficients a400, a310, a220,
// a130 of a quartic in tangent normal form (Z = tangent at P when a400 =
// a310 = 0): a220 != 0 ordinary, a220 = 0 != a130 flex, both zero hyperflex.
struct FlexClassification {
  FlexKind kind = FlexKind::NotOnCurveNormalForm;
  bool a400_zero = false, a310_zero = false, a220_zero = false,
       a130_zero = false;
  // Present when an h3 vanishing order was supplied: 3 matches ordinary,
  // 4 matches flex, 5 matches hyperflex.
  std::optional<bool> consistent_with_order;
};

FlexClassification classify_P_infinity(
    const HomogeneousPolynomial& F,
    std::optional<int> ord_h3 = std::nullopt);

// A factor package with the multiplicity of its isogeny block.
struct FactorMultiplicity {
  const EigenformPackage* pkg = nullptr;
  int multiplicity = 1;
};

struct PointCount {
  long prime = 0;
  long count = 0;  // exhaustive count of projective F_p-points of V(F)
  std::optional<Rat> expected;  // p + 1 - sum of multiplicity * Tr(a_p)
  std::optional<bool> consistent;
};

// Exhaustive count over the p^2 + p + 1 points of the projective plane.
PointCount count_points(const HomogeneousPolynomial& F, long p);

// Same, with the expected value from the factor traces; `level` is the
// common level of the record: p dividing it has no expected value.
PointCount count_points(const HomogeneousPolynomial& F, long p,
                        const std::vector<FactorMultiplicity>& factors,
                        long level);

}  // namespace modcurve
