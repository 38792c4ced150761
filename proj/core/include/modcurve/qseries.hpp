// Exact truncated q-expansions: series sum_{n>=1} a_n q^n known through q^M.
//
// Truncation semantics: unknown is not zero.  A series stores exactly M
// coefficients (exponents 1..M) and every operation computes the largest
// exponent window its result is reliable for, rather than silently
// truncating.  Products of series vanishing at q^0 gain reliability from the
// vanishing orders of their factors.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "modcurve/errors.hpp"
#include "modcurve/rational.hpp"

namespace modcurve {

// Coefficient-ring hooks for the rationals and integers; other rings
// (number-field elements, prime fields) overload these in their own headers.
inline bool ring_is_zero(const Rat& r) { return r == 0; }
inline Rat ring_zero_like(const Rat&) { return Rat(0); }
inline Rat ring_mul_int(const Rat& r, long long n) { return r * n; }
inline bool ring_is_zero(const Int& r) { return r == 0; }
inline Int ring_zero_like(const Int&) { return Int(0); }
inline Int ring_mul_int(const Int& r, long long n) { return r * n; }

// First exponent with a nonzero known coefficient; empty = all known
// coefficients vanish ("beyond-truncation").
using VanishingOrder = std::optional<int>;

inline std::string vanishing_order_text(const VanishingOrder& v) {
  return v ? std::to_string(*v) : std::string("beyond-truncation");
}

template <class R>
class QSeries {
public:
  explicit QSeries(std::vector<R> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty())
      fail("invalid-parameter", "series needs a positive truncation order");
  }

  static QSeries zero(int trunc, const R& like) {
    if (trunc < 1)
      fail("invalid-parameter", "series needs a positive truncation order");
    return QSeries(std::vector<R>(static_cast<size_t>(trunc),
                                  ring_zero_like(like)));
  }

  int trunc_order() const { return static_cast<int>(a_.size()); }

  // 1-based coefficient access, n in [1, trunc_order()].
  const R& at(int n) const {
    if (n < 1 || n > trunc_order())
      fail("invalid-parameter",
           "coefficient index " + std::to_string(n) + " outside known range 1.." +
               std::to_string(trunc_order()));
    return a_[static_cast<size_t>(n - 1)];
  }

  const std::vector<R>& coeffs() const { return a_; }

private:
  std::vector<R> a_;
};

template <class R>
VanishingOrder vanishing_order(const QSeries<R>& s) {
  for (int n = 1; n <= s.trunc_order(); ++n)
    if (!ring_is_zero(s.at(n))) return n;
  return std::nullopt;
}

// Lower bound for the true vanishing order: first unknown exponent when all
// known coefficients vanish.
template <class R>
int order_lower_bound(const QSeries<R>& s) {
  const auto v = vanishing_order(s);
  return v ? *v : s.trunc_order() + 1;
}

template <class R>
QSeries<R> add(const QSeries<R>& x, const QSeries<R>& y) {
  const int m = std::min(x.trunc_order(), y.trunc_order());
  std::vector<R> c;
  c.reserve(static_cast<size_t>(m));
  for (int n = 1; n <= m; ++n) c.push_back(x.at(n) + y.at(n));
  return QSeries<R>(std::move(c));
}

template <class R>
QSeries<R> sub(const QSeries<R>& x, const QSeries<R>& y) {
  const int m = std::min(x.trunc_order(), y.trunc_order());
  std::vector<R> c;
  c.reserve(static_cast<size_t>(m));
  for (int n = 1; n <= m; ++n) c.push_back(x.at(n) - y.at(n));
  return QSeries<R>(std::move(c));
}

template <class R>
QSeries<R> negate(const QSeries<R>& x) {
  std::vector<R> c;
  c.reserve(static_cast<size_t>(x.trunc_order()));
  for (int n = 1; n <= x.trunc_order(); ++n)
    c.push_back(ring_zero_like(x.at(1)) - x.at(n));
  return QSeries<R>(std::move(c));
}

template <class R, class S>
QSeries<R> scale(const QSeries<R>& x, const S& factor) {
  std::vector<R> c;
  c.reserve(static_cast<size_t>(x.trunc_order()));
  for (int n = 1; n <= x.trunc_order(); ++n) c.push_back(x.at(n) * factor);
  return QSeries<R>(std::move(c));
}

// Cauchy product.  Both factors vanish at q^0, so the result is reliable to
// min(M_x + ord(y), M_y + ord(x)), capped at M_x + M_y; `cap` optionally
// limits the computed window further (useful when only exponents up to a
// known bound are needed).
template <class R>
QSeries<R> mul(const QSeries<R>& x, const QSeries<R>& y, int cap = 0) {
  const int mx = x.trunc_order(), my = y.trunc_order();
  int m = std::min(mx + order_lower_bound(y), my + order_lower_bound(x));
  m = std::min(m, mx + my);
  if (cap > 0) m = std::min(m, cap);
  std::vector<R> c(static_cast<size_t>(m), ring_zero_like(x.at(1)));
  for (int i = std::max(1, order_lower_bound(x)); i <= mx; ++i) {
    if (ring_is_zero(x.at(i))) continue;
    const int jmax = std::min(my, m - i);
    for (int j = std::max(1, order_lower_bound(y)); j <= jmax; ++j) {
      if (ring_is_zero(y.at(j))) continue;
      c[static_cast<size_t>(i + j - 1)] =
          c[static_cast<size_t>(i + j - 1)] + x.at(i) * y.at(j);
    }
  }
  return QSeries<R>(std::move(c));
}

// theta = q d/dq: coefficient at n becomes n*a_n.
template <class R>
QSeries<R> theta(const QSeries<R>& x) {
  std::vector<R> c;
  c.reserve(static_cast<size_t>(x.trunc_order()));
  for (int n = 1; n <= x.trunc_order(); ++n)
    c.push_back(ring_mul_int(x.at(n), n));
  return QSeries<R>(std::move(c));
}

// a(q) -> a(q^d): coefficient at n*d equals a_n, zero elsewhere; the result
// is reliable through d*M (exponents below d*(M+1) not of the form n*d are
// provably zero).
template <class R>
QSeries<R> degeneracy(const QSeries<R>& x, int d) {
  if (d < 1) fail("invalid-parameter", "degeneracy map needs d >= 1");
  const int m = d * x.trunc_order();
  std::vector<R> c(static_cast<size_t>(m), ring_zero_like(x.at(1)));
  for (int n = 1; n <= x.trunc_order(); ++n)
    c[static_cast<size_t>(n * d - 1)] = x.at(n);
  return QSeries<R>(std::move(c));
}

// Restriction to a smaller known window.
template <class R>
QSeries<R> truncated(const QSeries<R>& x, int m) {
  if (m < 1 || m > x.trunc_order())
    fail("invalid-parameter", "truncation window outside known range");
  std::vector<R> c(x.coeffs().begin(), x.coeffs().begin() + m);
  return QSeries<R>(std::move(c));
}

// Equality of the overlapping known window (used by tests).
template <class R>
bool agree_on_overlap(const QSeries<R>& x, const QSeries<R>& y) {
  const int m = std::min(x.trunc_order(), y.trunc_order());
  for (int n = 1; n <= m; ++n)
    if (!ring_is_zero(x.at(n) - y.at(n))) return false;
  return true;
}

using RatSeries = QSeries<Rat>;
using IntSeries = QSeries<Int>;

}  // namespace modcurve
