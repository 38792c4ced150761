#include "modcurve/planequartic.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "modcurve/dirichlet.hpp"
#include "modcurve/errors.hpp"

namespace modcurve {

namespace {

// ---------------------------------------------------------------------------
// Field abstractions: the rationals and small prime fields share the same
// resultant / gcd machinery below.

struct RationalField {
  using T = Rat;
  T zero() const { return Rat(0); }
  T one() const { return Rat(1); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T div(const T& a, const T& b) const { return a / b; }
  T neg(const T& a) const { return -a; }
  T from_int(const Int& v) const { return Rat(v); }
};

struct PrimeField {
  using T = std::uint64_t;
  std::uint64_t p;
  T zero() const { return 0; }
  T one() const { return 1 % p; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const {
    const T s = a + b;
    return s >= p ? s - p : s;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
  T mul(T a, T b) const {
    return static_cast<T>((static_cast<unsigned __int128>(a) * b) % p);
  }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T pow(T a, std::uint64_t e) const {
    T r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  T inv(T a) const { return pow(a, p - 2); }
  T div(T a, T b) const { return mul(a, inv(b)); }
  T from_int(const Int& v) const {
    Int m = v % Int(p);
    if (m < 0) m += Int(p);
    return m.convert_to<std::uint64_t>();
  }
};

// ---------------------------------------------------------------------------
// Univariate polynomials over a field, coefficients ascending.

template <class F>
using UPoly = std::vector<typename F::T>;

template <class F>
void trim(const F& K, UPoly<F>& a) {
  while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

template <class V>
int pdeg(const V& a) {
  return static_cast<int>(a.size()) - 1;  // -1 for the zero polynomial
}

template <class F>
UPoly<F> padd(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> r(std::max(a.size(), b.size()), K.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = K.add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = K.add(r[i], b[i]);
  trim(K, r);
  return r;
}

template <class F>
UPoly<F> psub(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> r(std::max(a.size(), b.size()), K.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = K.add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
  trim(K, r);
  return r;
}

template <class F>
UPoly<F> pmul(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
  if (a.empty() || b.empty()) return {};
  UPoly<F> r(a.size() + b.size() - 1, K.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (K.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
  }
  trim(K, r);
  return r;
}

template <class F>
UPoly<F> pscale(const F& K, const UPoly<F>& a, const typename F::T& c) {
  if (K.is_zero(c)) return {};
  UPoly<F> r = a;
  for (auto& v : r) v = K.mul(v, c);
  return r;
}

// a = q*b + r with deg r < deg b; b must be nonzero.
template <class F>
std::pair<UPoly<F>, UPoly<F>> pdivmod(const F& K, UPoly<F> a,
                                      const UPoly<F>& b) {
  const int db = pdeg(b);
  if (db < 0) fail("invalid-parameter", "polynomial division by zero");
  UPoly<F> q;
  if (pdeg(a) >= db) q.assign(static_cast<size_t>(pdeg(a) - db + 1), K.zero());
  const typename F::T lead_inv = K.div(K.one(), b.back());
  while (pdeg(a) >= db) {
    const int shift = pdeg(a) - db;
    const typename F::T c = K.mul(a.back(), lead_inv);
    q[static_cast<size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) {
      auto& tgt = a[static_cast<size_t>(shift + i)];
      tgt = K.sub(tgt, K.mul(c, b[static_cast<size_t>(i)]));
    }
    trim(K, a);
  }
  trim(K, q);
  return {std::move(q), std::move(a)};
}

template <class F>
UPoly<F> pexact_div(const F& K, const UPoly<F>& a, const UPoly<F>& b) {
  auto [q, r] = pdivmod(K, a, b);
  if (!r.empty())
    fail("mismatch", "internal: fraction-free elimination division not exact");
  return q;
}

template <class F>
UPoly<F> pmonic(const F& K, UPoly<F> a) {
  if (a.empty()) return a;
  const typename F::T inv = K.div(K.one(), a.back());
  for (auto& v : a) v = K.mul(v, inv);
  return a;
}

template <class F>
UPoly<F> pgcd(const F& K, UPoly<F> a, UPoly<F> b) {
  trim(K, a);
  trim(K, b);
  while (!b.empty()) {
    auto [q, r] = pdivmod(K, a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(K, std::move(a));
}

template <class F>
UPoly<F> pderiv(const F& K, const UPoly<F>& a) {
  UPoly<F> r;
  for (size_t i = 1; i < a.size(); ++i)
    r.push_back(K.mul(a[i], K.from_int(Int(static_cast<long>(i)))));
  trim(K, r);
  return r;
}

// Extended gcd: returns (g, s) with s*a = g (mod b), g monic.
template <class F>
std::pair<UPoly<F>, UPoly<F>> pext_gcd_first(const F& K, UPoly<F> a,
                                             UPoly<F> b) {
  UPoly<F> s0 = {K.one()}, s1 = {};
  trim(K, a);
  trim(K, b);
  while (!b.empty()) {
    auto [q, r] = pdivmod(K, a, b);
    UPoly<F> s2 = psub(K, s0, pmul(K, q, s1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (!a.empty()) {
    const typename F::T inv = K.div(K.one(), a.back());
    for (auto& v : a) v = K.mul(v, inv);
    for (auto& v : s0) v = K.mul(v, inv);
  }
  return {std::move(a), std::move(s0)};
}

// ---------------------------------------------------------------------------
// Sparse trivariate polynomials over a field.

template <class F>
struct TriPoly {
  int degree = 0;
  std::map<ExponentTriple, typename F::T> terms;
  bool empty() const { return terms.empty(); }
};

template <class F>
TriPoly<F> reduce_tri(const F& K, const HomogeneousPolynomial& P) {
  TriPoly<F> out;
  out.degree = P.degree();
  for (const auto& [e, c] : P.terms()) {
    auto v = K.from_int(c);
    if (!K.is_zero(v)) out.terms.emplace(e, v);
  }
  return out;
}

Int binomial(int n, int k) {
  Int r(1);
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

template <class F>
typename F::T tri_eval(const F& K, const TriPoly<F>& P, const typename F::T& x,
                       const typename F::T& y, const typename F::T& z) {
  typename F::T acc = K.zero();
  for (const auto& [e, c] : P.terms) {
    typename F::T t = c;
    for (int i = 0; i < e[0]; ++i) t = K.mul(t, x);
    for (int i = 0; i < e[1]; ++i) t = K.mul(t, y);
    for (int i = 0; i < e[2]; ++i) t = K.mul(t, z);
    acc = K.add(acc, t);
  }
  return acc;
}

// X -> X + t*Z, Y -> Y + u*Z.
template <class F>
TriPoly<F> tri_shear(const F& K, const TriPoly<F>& P, const typename F::T& t,
                     const typename F::T& u) {
  TriPoly<F> out;
  out.degree = P.degree;
  for (const auto& [e, c] : P.terms) {
    for (int a = 0; a <= e[0]; ++a) {
      typename F::T ca = K.mul(c, K.from_int(binomial(e[0], a)));
      for (int i = 0; i < e[0] - a; ++i) ca = K.mul(ca, t);
      if (K.is_zero(ca)) continue;
      for (int b = 0; b <= e[1]; ++b) {
        typename F::T cb = K.mul(ca, K.from_int(binomial(e[1], b)));
        for (int i = 0; i < e[1] - b; ++i) cb = K.mul(cb, u);
        if (K.is_zero(cb)) continue;
        const ExponentTriple f = {a, b, e[2] + (e[0] - a) + (e[1] - b)};
        auto it = out.terms.find(f);
        if (it == out.terms.end())
          out.terms.emplace(f, cb);
        else {
          it->second = K.add(it->second, cb);
          if (K.is_zero(it->second)) out.terms.erase(it);
        }
      }
    }
  }
  return out;
}

// Coefficients of Z^k of P(X, 1, Z) as polynomials in X.
template <class F>
std::vector<UPoly<F>> affine_chart_Y1(const F& K, const TriPoly<F>& P) {
  std::vector<UPoly<F>> A(static_cast<size_t>(P.degree + 1));
  for (const auto& [e, c] : P.terms) {
    auto& row = A[static_cast<size_t>(e[2])];
    if (static_cast<int>(row.size()) <= e[0]) row.resize(e[0] + 1, K.zero());
    row[static_cast<size_t>(e[0])] = K.add(row[static_cast<size_t>(e[0])], c);
  }
  for (auto& row : A) trim(K, row);
  while (!A.empty() && A.back().empty()) A.pop_back();
  return A;
}

// P(x, 0, 1) as a univariate polynomial in x (the line Y = 0, chart Z = 1,
// together with the coefficient at (1:0:0) handled by the caller).
template <class F>
UPoly<F> line_Y0_dehom(const F& K, const TriPoly<F>& P) {
  UPoly<F> w;
  for (const auto& [e, c] : P.terms) {
    if (e[1] != 0) continue;
    if (static_cast<int>(w.size()) <= e[0]) w.resize(e[0] + 1, K.zero());
    w[static_cast<size_t>(e[0])] = K.add(w[static_cast<size_t>(e[0])], c);
  }
  trim(K, w);
  return w;
}

// ---------------------------------------------------------------------------
// Resultant with respect to Z of two polynomials in K[X][Z] (fraction-free
// Bareiss determinant of the Sylvester matrix with K[X] entries).

template <class F>
UPoly<F> resultant_Z(const F& K, const std::vector<UPoly<F>>& A,
                     const std::vector<UPoly<F>>& B) {
  const int m = static_cast<int>(A.size()) - 1;
  const int n = static_cast<int>(B.size()) - 1;
  if (m < 0 || n < 0) return {};
  if (m == 0 && n == 0) return {K.one()};
  if (m == 0) {
    UPoly<F> r = {K.one()};
    for (int i = 0; i < n; ++i) r = pmul(K, r, A[0]);
    return r;
  }
  if (n == 0) {
    UPoly<F> r = {K.one()};
    for (int i = 0; i < m; ++i) r = pmul(K, r, B[0]);
    return r;
  }
  const int N = m + n;
  std::vector<std::vector<UPoly<F>>> M(
      static_cast<size_t>(N), std::vector<UPoly<F>>(static_cast<size_t>(N)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= m; ++c) M[static_cast<size_t>(r)][static_cast<size_t>(r + c)] =
        A[static_cast<size_t>(m - c)];
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= n; ++c)
      M[static_cast<size_t>(n + r)][static_cast<size_t>(r + c)] =
          B[static_cast<size_t>(n - c)];

  UPoly<F> prev = {K.one()};
  for (int k = 0; k < N - 1; ++k) {
    int pivot = -1;
    for (int r = k; r < N; ++r)
      if (!M[static_cast<size_t>(r)][static_cast<size_t>(k)].empty()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return {};  // zero column: determinant vanishes
    if (pivot != k) std::swap(M[static_cast<size_t>(pivot)], M[static_cast<size_t>(k)]);
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        UPoly<F> num =
            psub(K,
                 pmul(K, M[static_cast<size_t>(i)][static_cast<size_t>(j)],
                      M[static_cast<size_t>(k)][static_cast<size_t>(k)]),
                 pmul(K, M[static_cast<size_t>(i)][static_cast<size_t>(k)],
                      M[static_cast<size_t>(k)][static_cast<size_t>(j)]));
        M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            num.empty() ? UPoly<F>{} : pexact_div(K, num, prev);
      }
      M[static_cast<size_t>(i)][static_cast<size_t>(k)] = {};
    }
    prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return M[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
}

// ---------------------------------------------------------------------------
// Dynamic-evaluation test: does some root xi of m admit a common Z-root of
// all the given K[X][Z] polynomials at X = xi?  Works over K[T]/m with
// automatic splitting of m at zero divisors; m must be squarefree.

template <class F>
UPoly<F> mod_reduce(const F& K, const UPoly<F>& a, const UPoly<F>& m) {
  auto [q, r] = pdivmod(K, a, m);
  (void)q;
  return r;
}

template <class F>
bool exists_common_root_above(const F& K, UPoly<F> m,
                              const std::vector<std::vector<UPoly<F>>>& polys) {
  m = pmonic(K, std::move(m));
  if (pdeg(m) < 1) return false;

  // Coefficients of the working polynomials live in L = K[T]/m.
  using ZPoly = std::vector<UPoly<F>>;
  const auto trimZ = [&](ZPoly& z) {
    while (!z.empty() && z.back().empty()) z.pop_back();
  };
  std::vector<ZPoly> reduced;
  for (const auto& P : polys) {
    ZPoly z;
    for (const auto& coeff : P) z.push_back(mod_reduce(K, coeff, m));
    trimZ(z);
    reduced.push_back(std::move(z));
  }

  // Running gcd via Euclid; a zero-divisor leading coefficient splits m.
  ZPoly g = reduced.front();
  for (size_t idx = 1; idx < reduced.size(); ++idx) {
    ZPoly b = reduced[idx];
    while (true) {
      trimZ(g);
      trimZ(b);
      if (b.empty()) break;
      if (g.empty() || g.size() < b.size()) std::swap(g, b);
      if (b.empty()) break;
      const UPoly<F>& lc = b.back();
      const UPoly<F> h = pgcd(K, lc, m);
      if (pdeg(h) >= 1 && pdeg(h) < pdeg(m)) {
        // Split: decide each factor independently.
        const UPoly<F> other = pexact_div(K, m, h);
        return exists_common_root_above(K, h, polys) ||
               exists_common_root_above(K, other, polys);
      }
      // lc invertible mod m: one division step  g -> g mod b.
      auto [gd, s] = pext_gcd_first(K, lc, m);
      (void)gd;
      const UPoly<F> lc_inv = mod_reduce(K, s, m);
      ZPoly r = g;
      while (r.size() >= b.size() && !r.empty()) {
        const int shift = static_cast<int>(r.size() - b.size());
        const UPoly<F> c = mod_reduce(K, pmul(K, r.back(), lc_inv), m);
        for (size_t i = 0; i < b.size(); ++i) {
          auto& tgt = r[static_cast<size_t>(shift) + i];
          tgt = mod_reduce(K, psub(K, tgt, pmul(K, c, b[i])), m);
        }
        trimZ(r);
      }
      g = std::move(b);
      b = std::move(r);
    }
    if (g.empty()) break;  // everything vanished: treat as degree 0 below
  }
  return g.size() >= 2;  // Z-degree >= 1
}

// ---------------------------------------------------------------------------
// Common projective zero over the algebraic closure.

enum class ZeroDecision { Empty, NonEmpty, Unresolved };

template <class F>
ZeroDecision decide_common_zero(
    const F& K, const std::vector<TriPoly<F>>& P,
    const std::vector<std::pair<typename F::T, typename F::T>>& shears) {
  for (const auto& tri : P)
    if (tri.empty()) return ZeroDecision::NonEmpty;

  for (const auto& [t, u] : shears) {
    bool valid = true;
    for (const auto& tri : P)
      if (K.is_zero(tri_eval(K, tri, t, u, K.one()))) {
        valid = false;
        break;
      }
    if (!valid) continue;

    std::vector<TriPoly<F>> Q;
    for (const auto& tri : P) Q.push_back(tri_shear(K, tri, t, u));

    // Line Y = 0.  Point (1:0:0): the pure X^d coefficients.
    bool all_top_zero = true;
    for (const auto& q : Q) {
      const auto it = q.terms.find({q.degree, 0, 0});
      if (it != q.terms.end() && !K.is_zero(it->second)) {
        all_top_zero = false;
        break;
      }
    }
    if (all_top_zero) return ZeroDecision::NonEmpty;
    // Points (x:0:1).
    UPoly<F> gline = line_Y0_dehom(K, Q[0]);
    for (size_t i = 1; i < Q.size() && pdeg(gline) >= 1; ++i)
      gline = pgcd(K, gline, line_Y0_dehom(K, Q[i]));
    if (pdeg(gline) >= 1) return ZeroDecision::NonEmpty;

    // Affine chart Y = 1.
    std::vector<std::vector<UPoly<F>>> A;
    for (const auto& q : Q) A.push_back(affine_chart_Y1(K, q));
    const UPoly<F> R12 = resultant_Z(K, A[0], A[1]);
    if (R12.empty()) return ZeroDecision::NonEmpty;
    const UPoly<F> R13 = resultant_Z(K, A[0], A[2]);
    if (R13.empty()) return ZeroDecision::NonEmpty;
    UPoly<F> g = pgcd(K, R12, R13);
    if (pdeg(g) < 1) return ZeroDecision::Empty;
    const UPoly<F> sqfree = pexact_div(K, g, pgcd(K, g, pderiv(K, g)));
    return exists_common_root_above(K, sqfree, A) ? ZeroDecision::NonEmpty
                                                  : ZeroDecision::Empty;
  }
  return ZeroDecision::Unresolved;
}

bool is_prime_long(long n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.size() == 1 && f.front().second == 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Smoothness.

std::string smoothness_verdict_text(SmoothnessCertificate::Verdict v) {
  switch (v) {
    case SmoothnessCertificate::Verdict::Smooth:
      return "smooth";
    case SmoothnessCertificate::Verdict::Singular:
      return "singular";
    case SmoothnessCertificate::Verdict::Undetermined:
      return "undetermined";
  }
  return "?";
}

SmoothnessCertificate check_smooth(const HomogeneousPolynomial& F_in) {
  if (F_in.is_zero())
    fail("zero-polynomial", "the zero polynomial defines no curve");
  const HomogeneousPolynomial F = F_in.normalized();
  const int d = F.degree();
  if (d == 0)
    fail("invalid-parameter", "a nonzero constant defines no curve");
  if (d == 1)
    return {SmoothnessCertificate::Verdict::Smooth, std::nullopt,
            "degree 1: lines are smooth"};

  const HomogeneousPolynomial partials[3] = {F.partial(0), F.partial(1),
                                             F.partial(2)};
  for (int v = 0; v < 3; ++v)
    if (partials[v].is_zero())
      return {SmoothnessCertificate::Verdict::Singular, std::nullopt,
              std::string("the partial derivative in ") +
                  "XYZ"[v] +
                  " vanishes identically; the curve is a degenerate "
                  "cylinder and singular at its vertex"};

  static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                23, 29, 31, 37, 41, 43, 47};
  for (const long p : primes) {
    const PrimeField K{static_cast<std::uint64_t>(p)};
    std::vector<TriPoly<PrimeField>> tri;
    bool degenerate = false;
    for (const auto& P : partials) {
      TriPoly<PrimeField> t = reduce_tri(K, P);
      if (t.empty()) {
        degenerate = true;
        break;
      }
      tri.push_back(std::move(t));
    }
    if (degenerate) continue;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> shears;
    for (std::uint64_t t = 0; t < K.p; ++t)
      for (std::uint64_t u = 0; u < K.p; ++u) shears.emplace_back(t, u);
    if (decide_common_zero(K, tri, shears) == ZeroDecision::Empty)
      return {SmoothnessCertificate::Verdict::Smooth, p,
              "the partial derivatives share no zero over the algebraic "
              "closure of F_" +
                  std::to_string(p) +
                  "; a smooth reduction certifies smoothness over Q"};
  }

  const RationalField K;
  std::vector<TriPoly<RationalField>> tri;
  for (const auto& P : partials) tri.push_back(reduce_tri(K, P));
  std::vector<std::pair<Rat, Rat>> shears;
  for (int t = 0; t <= 30; ++t)
    for (int u = 0; u <= 30; ++u) shears.emplace_back(Rat(t), Rat(u));
  switch (decide_common_zero(K, tri, shears)) {
    case ZeroDecision::Empty:
      return {SmoothnessCertificate::Verdict::Smooth, std::nullopt,
              "exact certificate: the partial derivatives share no zero over "
              "the algebraic closure of Q"};
    case ZeroDecision::NonEmpty:
      return {SmoothnessCertificate::Verdict::Singular, std::nullopt,
              "the partial derivatives share a zero over the algebraic "
              "closure of Q; by the Euler relation it lies on the curve"};
    case ZeroDecision::Unresolved:
      break;
  }
  return {SmoothnessCertificate::Verdict::Undetermined, std::nullopt,
          "coordinate-change schedule exhausted without a usable chart"};
}

// ---------------------------------------------------------------------------
// Flex classification at P = (1:0:0).

std::string flex_kind_text(FlexKind k) {
  switch (k) {
    case FlexKind::NotOnCurveNormalForm:
      return "not-on-curve-normal-form";
    case FlexKind::OrdinaryPoint:
      return "ordinary-point";
    case FlexKind::Flex:
      return "flex";
    case FlexKind::Hyperflex:
      return "hyperflex";
  }
  return "?";
}

FlexClassification classify_P_infinity(const HomogeneousPolynomial& F,
                                       std::optional<int> ord_h3) {
  const int d = F.degree();
  if (d < 3)
    fail("invalid-parameter",
         "tangent classification needs a curve of degree at least 3");
  FlexClassification out;
  out.a400_zero = F.coefficient(d, 0, 0) == 0;
  out.a310_zero = F.coefficient(d - 1, 1, 0) == 0;
  out.a220_zero = F.coefficient(d - 2, 2, 0) == 0;
  out.a130_zero = F.coefficient(d - 3, 3, 0) == 0;
  if (!out.a400_zero || !out.a310_zero)
    out.kind = FlexKind::NotOnCurveNormalForm;
  else if (!out.a220_zero)
    out.kind = FlexKind::OrdinaryPoint;
  else if (!out.a130_zero)
    out.kind = FlexKind::Flex;
  else
    out.kind = FlexKind::Hyperflex;
  if (ord_h3) {
    out.consistent_with_order =
        (*ord_h3 == 3 && out.kind == FlexKind::OrdinaryPoint) ||
        (*ord_h3 == 4 && out.kind == FlexKind::Flex) ||
        (*ord_h3 == 5 && out.kind == FlexKind::Hyperflex);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point counting.

PointCount count_points(const HomogeneousPolynomial& F_in, long p) {
  if (F_in.is_zero())
    fail("zero-polynomial", "the zero polynomial defines no curve");
  if (!is_prime_long(p))
    fail("invalid-parameter", std::to_string(p) + " is not prime");
  const HomogeneousPolynomial F = F_in.normalized();
  const PrimeField K{static_cast<std::uint64_t>(p)};
  const TriPoly<PrimeField> tri = reduce_tri(K, F);
  if (tri.empty())
    fail("invalid-parameter",
         "the polynomial vanishes identically modulo " + std::to_string(p));

  // pow_table[v][e] = v^e for v in F_p, e <= degree.
  const int d = F.degree();
  std::vector<std::vector<std::uint64_t>> pow_table(
      static_cast<size_t>(p), std::vector<std::uint64_t>(static_cast<size_t>(d + 1)));
  for (long v = 0; v < p; ++v) {
    pow_table[static_cast<size_t>(v)][0] = 1 % K.p;
    for (int e = 1; e <= d; ++e)
      pow_table[static_cast<size_t>(v)][static_cast<size_t>(e)] = K.mul(
          pow_table[static_cast<size_t>(v)][static_cast<size_t>(e - 1)],
          static_cast<std::uint64_t>(v));
  }
  const auto value_at = [&](std::uint64_t x, std::uint64_t y,
                            std::uint64_t z) {
    std::uint64_t acc = 0;
    for (const auto& [e, c] : tri.terms) {
      std::uint64_t t = c;
      t = K.mul(t, pow_table[static_cast<size_t>(x)][static_cast<size_t>(e[0])]);
      t = K.mul(t, pow_table[static_cast<size_t>(y)][static_cast<size_t>(e[1])]);
      t = K.mul(t, pow_table[static_cast<size_t>(z)][static_cast<size_t>(e[2])]);
      acc = K.add(acc, t);
    }
    return acc;
  };

  long count = 0;
  for (long y = 0; y < p; ++y)
    for (long z = 0; z < p; ++z)
      if (value_at(1, static_cast<std::uint64_t>(y),
                   static_cast<std::uint64_t>(z)) == 0)
        ++count;
  for (long z = 0; z < p; ++z)
    if (value_at(0, 1, static_cast<std::uint64_t>(z)) == 0) ++count;
  if (value_at(0, 0, 1) == 0) ++count;

  PointCount out;
  out.prime = p;
  out.count = count;
  return out;
}

PointCount count_points(const HomogeneousPolynomial& F, long p,
                        const std::vector<FactorMultiplicity>& factors,
                        long level) {
  PointCount out = count_points(F, p);
  if (level % p == 0)
    fail("no-expected-value",
         "prime " + std::to_string(p) + " divides the level " +
             std::to_string(level) +
             "; no trace-based expected value (exhaustive count: " +
             std::to_string(out.count) + ")");
  Rat expected(p + 1);
  for (const FactorMultiplicity& f : factors) {
    if (f.pkg == nullptr)
      fail("invalid-parameter", "null factor package");
    if (f.pkg->trunc_order() < p)
      fail("insufficient-truncation",
           "factor " + f.pkg->label().text() + " supplies coefficients to " +
               std::to_string(f.pkg->trunc_order()) +
               " but the expected count needs a_" + std::to_string(p));
    expected -= Rat(f.multiplicity) * f.pkg->a(static_cast<int>(p)).trace();
  }
  out.expected = expected;
  out.consistent = Rat(out.count) == expected;
  return out;
}

}  // namespace modcurve
