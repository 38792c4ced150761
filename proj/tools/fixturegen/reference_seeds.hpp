// Independently published q-expansion prefixes used as cross-checks while
// deriving the bundled fixture packages.  Values are frozen here verbatim;
// the derivation pipelines must reproduce every listed coefficient exactly.
#pragma once

#include <vector>

#include "modcurve/qseries.hpp"

namespace fixturegen::seeds {

// Normalized basis of the level-243 three-fold with cubic coefficient field
// (label 243E), coefficients 1..19.
extern const std::vector<long> k243E_h1;
extern const std::vector<long> k243E_h2;
extern const std::vector<long> k243E_h3;

// Pivot-(1,3,7) echelon basis at level 178, cubic coefficient field
// (label 178D), coefficients 1..19.
extern const std::vector<long> k178D_f1;
extern const std::vector<long> k178D_f2;
extern const std::vector<long> k178D_f3;

// Level-178 quadratic-field pair (label 178C): echelon streams with pivots
// 1 and 3, coefficients 1..14 and 1..18.
extern const std::vector<long> k178C_f1;
extern const std::vector<long> k178C_f2;

// Level-89 rational eigenform (label 89A), coefficients 1..10.
extern const std::vector<long> k89A;

// Compare a solved series against a seed prefix (index n == coefficient of
// q^n); returns the first mismatching exponent or 0 when all match.
int first_seed_mismatch(const modcurve::RatSeries& got,
                        const std::vector<long>& want);

}  // namespace fixturegen::seeds
