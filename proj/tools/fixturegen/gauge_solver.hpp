// Reconstructs the canonically normalized cusp-form basis directly from a
// degree-4 plane relation in curve normal form.
//
// For a smooth quartic F with F(h1,h2,h3) = 0 on a normalized basis
// (h1 = q + ..., h2 = q^2 + ..., h3 = q^nu + ..., echelon-reduced), the
// logarithmic Wronskians satisfy
//     h1 th(h2) - h2 th(h1) = c F_Z(h1,h2,h3)
//     h3 th(h1) - h1 th(h3) = c F_Y(h1,h2,h3)        (th = q d/dq)
//     h2 th(h3) - h3 th(h2) = c F_X(h1,h2,h3)
// with c = 1 / [X^3 Z](F).  These identities are invariant under the
// weight-2 reparametrization h_i |-> (th(phi)/phi) h_i(phi) for any formal
// substitution phi(q) = q + ..., so they pin the basis only up to a residual
// family that the echelon gauge does not cut.  The missing rigidity is
// arithmetic: for the smallest prime p coprime to the level, degeneracy
// shifts f(q^e) commute with T_p, so the span of (h1,h2,h3) is stable under
// the index-p Hecke operator.  The solver therefore also imposes
//     h_i[p n] + p sum_j d_ij h_j[n/p] = sum_j c_ij h_j[n]
// with an unknown rational matrix (c_ij); (d_ij) represents the diamond
// operator <p> on the span -- the identity when the character is trivial,
// an unknown matrix otherwise.  All equations stream order by order through
// an online eliminator.
#pragma once

#include "modcurve/qseries.hpp"
#include "modcurve/relation.hpp"

namespace fixturegen {

struct GaugeBasis {
  modcurve::RatSeries h1, h2, h3;
};

// Extra pin h_i[n] = value asserted alongside the structural equations
// (diagnostic aid; an inconsistent pin throws).
struct CoefficientPin {
  int i;  // series index 1..3
  int n;  // exponent
  modcurve::Rat value;
};

// M = number of coefficients wanted (exponents 1..M).  nu = order of h3,
// i.e. the contact order of Z = 0 at (1:0:0); must be 3, 4 or 5.  The level
// selects the stability prime (smallest prime not dividing it).
// diamond_is_identity: pass true when the space has trivial character, so
// the stability formula uses <p> = id instead of an unknown 3x3 matrix.
GaugeBasis solve_normal_form_basis(const modcurve::HomogeneousPolynomial& F,
                                   int nu, int M, long level,
                                   bool diamond_is_identity,
                                   const std::vector<CoefficientPin>& pins = {});

}  // namespace fixturegen
