// Arithmetic in K = Q[x]/(p(x)) for coefficient fields of degree <= 3:
// exact power-basis elements, traces via Newton power sums, polynomial
// discriminants, characteristic polynomials, and the roots of unity of small
// order that a field can contain.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modcurve/qseries.hpp"
#include "modcurve/rational.hpp"

namespace modcurve {

// Discriminant of a degree-2 or degree-3 polynomial, highest-degree
// coefficient first (leading coefficient need not be 1: the derivative of a
// monic cubic is a valid input).
Rat poly_disc(const std::vector<Rat>& coeffs);

// Monic integer polynomial of degree 1..3, irreducible over Q (validated:
// at these degrees reducibility is equivalent to an integer root).
class MinimalPolynomial {
public:
  explicit MinimalPolynomial(std::vector<Int> coeffs_highest_first);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  // Highest-degree coefficient first; c_[0] == 1.
  const std::vector<Int>& coefficients() const { return c_; }
  Rat discriminant() const;
  bool operator==(const MinimalPolynomial& o) const { return c_ == o.c_; }
  std::string text(const std::string& var = "x") const;

private:
  std::vector<Int> c_;
};

class NumberFieldElement;

// Shared immutable field context: minimal polynomial plus precomputed
// power sums of its roots (Newton's identities) for trace computation.
class NumberField {
public:
  static std::shared_ptr<const NumberField> create(MinimalPolynomial p);

  int degree() const { return poly_.degree(); }
  const MinimalPolynomial& poly() const { return poly_; }
  // Power sum s_k = sum of k-th powers of the roots, k = 0..2*degree.
  const Rat& power_sum(int k) const { return sums_.at(static_cast<size_t>(k)); }

  NumberFieldElement element(std::vector<Rat> coords) const;
  NumberFieldElement from_rational(const Rat& r) const;
  NumberFieldElement generator() const;

private:
  explicit NumberField(MinimalPolynomial p);
  MinimalPolynomial poly_;
  std::vector<Rat> sums_;
  std::weak_ptr<const NumberField> self_;
  friend class NumberFieldElement;
};

// Element in the power basis 1, x, ..., x^{deg-1}.
class NumberFieldElement {
public:
  NumberFieldElement(std::shared_ptr<const NumberField> field,
                     std::vector<Rat> coords);

  const std::shared_ptr<const NumberField>& field() const { return field_; }
  const std::vector<Rat>& coords() const { return co_; }
  const Rat& coord(int i) const { return co_.at(static_cast<size_t>(i)); }

  bool is_zero() const;
  bool is_rational() const;  // all coordinates above the constant vanish
  Rat trace() const;
  NumberFieldElement inverse() const;

  NumberFieldElement operator+(const NumberFieldElement& o) const;
  NumberFieldElement operator-(const NumberFieldElement& o) const;
  NumberFieldElement operator*(const NumberFieldElement& o) const;
  NumberFieldElement operator*(const Rat& r) const;
  NumberFieldElement operator*(long long n) const;
  NumberFieldElement operator-() const;
  bool operator==(const NumberFieldElement& o) const;

  // Monic characteristic polynomial of multiplication by this element,
  // highest-degree coefficient first (length degree+1).
  std::vector<Rat> char_poly() const;

private:
  void require_same_field(const NumberFieldElement& o) const;
  std::shared_ptr<const NumberField> field_;
  std::vector<Rat> co_;
};

using NFElem = NumberFieldElement;

// Coefficient-ring hooks so QSeries<NFElem> works.
inline bool ring_is_zero(const NFElem& e) { return e.is_zero(); }
inline NFElem ring_zero_like(const NFElem& e) {
  return e.field()->from_rational(0);
}
inline NFElem ring_mul_int(const NFElem& e, long long n) { return e * n; }

// Coordinates of `target` in the power basis 1, gen, gen^2, ... of the same
// field; errors with singular-matrix when gen does not generate.
std::vector<Rat> coords_in_power_basis(const NFElem& target, const NFElem& gen);

// The primitive roots of unity of the given order that lie in the field
// (empty when none embed).  Orders covered: 1..6.
std::vector<NFElem> primitive_roots_of_unity(
    const std::shared_ptr<const NumberField>& field, int order);

// Exact rational square root when it exists.
std::optional<Rat> rational_sqrt(const Rat& r);

}  // namespace modcurve
