#include "modcurve/numberfield.hpp"

#include <algorithm>

namespace modcurve {

namespace {

// All positive divisors of |n| (n != 0), by trial division.
std::vector<Int> positive_divisors(Int n) {
  n = modcurve::abs(n);
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Rat eval_poly(const std::vector<Int>& c, const Rat& x) {
  Rat v = 0;
  for (const auto& ci : c) v = v * x + Rat(ci);
  return v;
}

}  // namespace

Rat poly_disc(const std::vector<Rat>& c) {
  if (c.empty() || c[0] == 0)
    fail("invalid-parameter", "leading coefficient must be nonzero");
  if (c.size() == 3) {
    // a x^2 + b x + c: b^2 - 4ac
    return c[1] * c[1] - 4 * c[0] * c[2];
  }
  if (c.size() == 4) {
    // a x^3 + b x^2 + c x + d:
    // 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2
    const Rat &a = c[0], &b = c[1], &cc = c[2], &d = c[3];
    return 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc -
           4 * a * cc * cc * cc - 27 * a * a * d * d;
  }
  fail("invalid-parameter", "discriminant supported for degrees 2 and 3 only");
}

MinimalPolynomial::MinimalPolynomial(std::vector<Int> coeffs)
    : c_(std::move(coeffs)) {
  if (c_.size() < 2 || c_.size() > 4)
    fail("invalid-parameter", "minimal polynomial degree must be 1..3");
  if (c_[0] != 1) fail("invalid-parameter", "minimal polynomial must be monic");
  if (degree() >= 2) {
    // Degree 2 or 3 over Q: reducible iff an integer root exists (monic).
    const Int& constant = c_.back();
    if (constant == 0)
      fail("reducible-polynomial", "x divides " + text());
    for (const Int& d : positive_divisors(constant)) {
      if (eval_poly(c_, Rat(d)) == 0 || eval_poly(c_, Rat(-d)) == 0)
        fail("reducible-polynomial",
             text() + " has the rational root ±" + d.str());
    }
  }
}

Rat MinimalPolynomial::discriminant() const {
  if (degree() == 1) return Rat(1);
  std::vector<Rat> c(c_.begin(), c_.end());
  return poly_disc(c);
}

std::string MinimalPolynomial::text(const std::string& var) const {
  std::string out;
  const int deg = degree();
  for (int i = 0; i <= deg; ++i) {
    const Int& ci = c_[static_cast<size_t>(i)];
    if (ci == 0) continue;
    const int e = deg - i;
    std::string term;
    const Int a = modcurve::abs(ci);
    if (e == 0 || a != 1) term += a.str();
    if (e >= 1) {
      term += var;
      if (e >= 2) term += "^" + std::to_string(e);
    }
    if (out.empty())
      out = (ci < 0 ? "-" : "") + term;
    else
      out += (ci < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

NumberField::NumberField(MinimalPolynomial p) : poly_(std::move(p)) {
  // Newton's identities: p = x^n + a_1 x^{n-1} + ... + a_n.
  const int n = poly_.degree();
  const auto& c = poly_.coefficients();
  auto a = [&](int j) -> Rat {
    return j <= n ? Rat(c[static_cast<size_t>(j)]) : Rat(0);
  };
  sums_.assign(static_cast<size_t>(2 * n + 1), Rat(0));
  sums_[0] = n;
  for (int k = 1; k <= 2 * n; ++k) {
    Rat s = 0;
    for (int j = 1; j < k; ++j) s += a(j) * sums_[static_cast<size_t>(k - j)];
    if (k <= n) s += a(k) * k;
    sums_[static_cast<size_t>(k)] = -s;
  }
}

std::shared_ptr<const NumberField> NumberField::create(MinimalPolynomial p) {
  auto field = std::shared_ptr<NumberField>(new NumberField(std::move(p)));
  field->self_ = field;
  return field;
}

NumberFieldElement NumberField::element(std::vector<Rat> coords) const {
  if (static_cast<int>(coords.size()) != degree())
    fail("invalid-parameter", "coordinate vector length must equal the degree");
  return NumberFieldElement(self_.lock(), std::move(coords));
}

NumberFieldElement NumberField::from_rational(const Rat& r) const {
  std::vector<Rat> co(static_cast<size_t>(degree()), Rat(0));
  co[0] = r;
  return NumberFieldElement(self_.lock(), std::move(co));
}

NumberFieldElement NumberField::generator() const {
  if (degree() == 1) return from_rational(-Rat(poly_.coefficients()[1]));
  std::vector<Rat> co(static_cast<size_t>(degree()), Rat(0));
  co[1] = 1;
  return NumberFieldElement(self_.lock(), std::move(co));
}

NumberFieldElement::NumberFieldElement(
    std::shared_ptr<const NumberField> field, std::vector<Rat> coords)
    : field_(std::move(field)), co_(std::move(coords)) {
  if (!field_) fail("invalid-parameter", "element needs a field");
  if (static_cast<int>(co_.size()) != field_->degree())
    fail("invalid-parameter", "coordinate vector length must equal the degree");
}

void NumberFieldElement::require_same_field(
    const NumberFieldElement& o) const {
  if (field_ == o.field_) return;
  if (!(field_->poly() == o.field_->poly()))
    fail("mixed-field", "operands live in different number fields: " +
                            field_->poly().text() + " vs " +
                            o.field_->poly().text());
}

bool NumberFieldElement::is_zero() const {
  return std::all_of(co_.begin(), co_.end(),
                     [](const Rat& r) { return r == 0; });
}

bool NumberFieldElement::is_rational() const {
  for (size_t i = 1; i < co_.size(); ++i)
    if (co_[i] != 0) return false;
  return true;
}

Rat NumberFieldElement::trace() const {
  Rat t = 0;
  for (size_t i = 0; i < co_.size(); ++i)
    t += co_[i] * field_->power_sum(static_cast<int>(i));
  return t;
}

NumberFieldElement NumberFieldElement::operator+(
    const NumberFieldElement& o) const {
  require_same_field(o);
  std::vector<Rat> c(co_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.co_[i];
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator-(
    const NumberFieldElement& o) const {
  require_same_field(o);
  std::vector<Rat> c(co_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.co_[i];
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator*(
    const NumberFieldElement& o) const {
  require_same_field(o);
  const int n = field_->degree();
  // Raw product, degree up to 2n-2.
  std::vector<Rat> prod(static_cast<size_t>(2 * n - 1), Rat(0));
  for (int i = 0; i < n; ++i) {
    if (co_[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j)
      prod[static_cast<size_t>(i + j)] +=
          co_[static_cast<size_t>(i)] * o.co_[static_cast<size_t>(j)];
  }
  // Reduce x^k for k >= n using x^n = -(a_1 x^{n-1} + ... + a_n).
  const auto& pc = field_->poly().coefficients();
  for (int k = 2 * n - 2; k >= n; --k) {
    const Rat lead = prod[static_cast<size_t>(k)];
    if (lead == 0) continue;
    prod[static_cast<size_t>(k)] = 0;
    for (int j = 1; j <= n; ++j)
      prod[static_cast<size_t>(k - j)] -= lead * Rat(pc[static_cast<size_t>(j)]);
  }
  prod.resize(static_cast<size_t>(n));
  return NumberFieldElement(field_, std::move(prod));
}

NumberFieldElement NumberFieldElement::operator*(const Rat& r) const {
  std::vector<Rat> c(co_);
  for (auto& x : c) x *= r;
  return NumberFieldElement(field_, std::move(c));
}

NumberFieldElement NumberFieldElement::operator*(long long m) const {
  return *this * Rat(m);
}

NumberFieldElement NumberFieldElement::operator-() const {
  std::vector<Rat> c(co_);
  for (auto& x : c) x = -x;
  return NumberFieldElement(field_, std::move(c));
}

bool NumberFieldElement::operator==(const NumberFieldElement& o) const {
  require_same_field(o);
  return co_ == o.co_;
}

namespace {

// Multiplication-by-u matrix in the power basis: column j = coords of u*x^j.
std::vector<std::vector<Rat>> mult_matrix(const NumberFieldElement& u) {
  const int n = u.field()->degree();
  std::vector<std::vector<Rat>> m(static_cast<size_t>(n),
                                  std::vector<Rat>(static_cast<size_t>(n)));
  NumberFieldElement cur = u;
  const NumberFieldElement gen = u.field()->generator();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = cur.coord(i);
    if (j + 1 < n) cur = cur * gen;
  }
  return m;
}

// Solves the n x n system M v = rhs by Gaussian elimination.
std::optional<std::vector<Rat>> solve_linear(
    std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  const size_t n = m.size();
  for (size_t col = 0, row = 0; col < n && row < n; ++col) {
    size_t piv = row;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;  // singular
    std::swap(m[piv], m[row]);
    std::swap(rhs[piv], rhs[row]);
    const Rat inv = Rat(1) / m[row][col];
    for (size_t j = col; j < n; ++j) m[row][j] *= inv;
    rhs[row] *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rat f = m[i][col];
      for (size_t j = col; j < n; ++j) m[i][j] -= f * m[row][j];
      rhs[i] -= f * rhs[row];
    }
    ++row;
  }
  return rhs;
}

}  // namespace

NumberFieldElement NumberFieldElement::inverse() const {
  if (is_zero()) fail("degenerate-input", "inverse of zero");
  const int n = field_->degree();
  std::vector<Rat> e1(static_cast<size_t>(n), Rat(0));
  e1[0] = 1;
  auto sol = solve_linear(mult_matrix(*this), std::move(e1));
  if (!sol) fail("degenerate-input", "element is a zero divisor");
  return NumberFieldElement(field_, std::move(*sol));
}

std::vector<Rat> NumberFieldElement::char_poly() const {
  const auto m = mult_matrix(*this);
  const int n = field_->degree();
  if (n == 1) return {Rat(1), -m[0][0]};
  if (n == 2) {
    const Rat tr = m[0][0] + m[1][1];
    const Rat det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return {Rat(1), -tr, det};
  }
  const Rat tr = m[0][0] + m[1][1] + m[2][2];
  const Rat minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] +
                     m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                     m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const Rat det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {Rat(1), -tr, minors, -det};
}

std::vector<Rat> coords_in_power_basis(const NFElem& target,
                                       const NFElem& gen) {
  const int n = gen.field()->degree();
  std::vector<std::vector<Rat>> m(static_cast<size_t>(n),
                                  std::vector<Rat>(static_cast<size_t>(n)));
  NFElem cur = gen.field()->from_rational(1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i)
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = cur.coord(i);
    if (j + 1 < n) cur = cur * gen;
  }
  auto sol = solve_linear(std::move(m), target.coords());
  if (!sol)
    fail("singular-matrix", "element does not generate the field");
  return *sol;
}

std::optional<Rat> rational_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  const Int n = numerator(r), d = denominator(r);
  const Int sn = boost::multiprecision::sqrt(n);
  const Int sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rat(sn, sd);
}

std::vector<NFElem> primitive_roots_of_unity(
    const std::shared_ptr<const NumberField>& field, int order) {
  std::vector<NFElem> out;
  if (order == 1) {
    out.push_back(field->from_rational(1));
    return out;
  }
  if (order == 2) {
    out.push_back(field->from_rational(-1));
    return out;
  }
  if (order < 1 || order > 6 || order == 5)
    fail("invalid-parameter",
         "roots of unity supported for orders 1,2,3,4,6 only");
  if (field->degree() != 2) return out;  // no primitive roots of order >= 3
  // Cyclotomic z^2 + beta z + 1 with beta = 1 (order 3), 0 (order 4),
  // -1 (order 6); field polynomial x^2 + B x + C.  Writing z = u + v x:
  // v^2 = disc(cyclotomic)/disc(field), u = (B v - beta)/2.
  const auto& pc = field->poly().coefficients();
  const Rat B(pc[1]), C(pc[2]);
  const Rat beta = order == 3 ? 1 : (order == 4 ? 0 : -1);
  const Rat disc_cyc = beta * beta - 4;
  const Rat disc_field = B * B - 4 * C;
  const auto v = rational_sqrt(disc_cyc / disc_field);
  if (!v) return out;
  for (const Rat sign : {Rat(1), Rat(-1)}) {
    const Rat vv = *v * sign;
    if (vv == 0) continue;
    const Rat uu = (B * vv - beta) / 2;
    out.push_back(field->element({uu, vv}));
  }
  return out;
}

}  // namespace modcurve
