#include "modcurve/relation.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "modcurve/dirichlet.hpp"
#include "modcurve/errors.hpp"

namespace modcurve {

namespace {

Rat rat_pow(const Rat& base, int e) {
  Rat out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// s = alpha * S with S a primitive integer series whose first nonzero known
// coefficient is positive; all-zero windows get S = 0, alpha = 1.
struct ClearedSeries {
  IntSeries S;
  Rat alpha;
};

ClearedSeries content_cleared(const RatSeries& s) {
  Int den_lcm(1);
  for (const Rat& v : s.coeffs()) den_lcm = lcm(den_lcm, denominator(v));
  std::vector<Int> scaled;
  scaled.reserve(s.coeffs().size());
  Int g(0);
  for (const Rat& v : s.coeffs()) {
    Int c = numerator(v) * (den_lcm / denominator(v));
    g = gcd(g, c);
    scaled.push_back(std::move(c));
  }
  if (g == 0) return {IntSeries(std::move(scaled)), Rat(1)};
  for (const Int& c : scaled)
    if (c != 0) {
      if (c < 0) g = -g;
      break;
    }
  for (Int& c : scaled) c /= g;
  return {IntSeries(std::move(scaled)), Rat(g, den_lcm)};
}

// Content-cleared triple with lazily grown power tables, all windows capped.
struct MonomialEngine {
  IntSeries S[3] = {IntSeries({Int(0)}), IntSeries({Int(0)}),
                    IntSeries({Int(0)})};
  Rat alpha[3];
  int cap;
  std::vector<IntSeries> pow_[3];  // pow_[t][e-1] = S[t]^e

  MonomialEngine(const SeriesTriple& t, int cap_in) : cap(cap_in) {
    const RatSeries* in[3] = {&t.s1, &t.s2, &t.s3};
    for (int i = 0; i < 3; ++i) {
      ClearedSeries c = content_cleared(*in[i]);
      alpha[i] = c.alpha;
      S[i] = (cap > 0 && c.S.trunc_order() > cap) ? truncated(c.S, cap)
                                                  : c.S;
      pow_[i].push_back(S[i]);
    }
  }

  const IntSeries& power(int t, int e) {
    while (static_cast<int>(pow_[t].size()) < e)
      pow_[t].push_back(mul(pow_[t].back(), S[t], cap));
    return pow_[t][static_cast<size_t>(e - 1)];
  }

  // S1^i * S2^j * S3^k; i + j + k >= 1.
  IntSeries monomial(int i, int j, int k) {
    const int e[3] = {i, j, k};
    std::optional<IntSeries> acc;
    for (int t = 0; t < 3; ++t) {
      if (e[t] == 0) continue;
      const IntSeries& part = power(t, e[t]);
      acc = acc ? mul(*acc, part, cap) : part;
    }
    return *acc;
  }

  // Rational factor relating an S-monomial to the input-series monomial.
  Rat alpha_power(int i, int j, int k) const {
    return rat_pow(alpha[0], i) * rat_pow(alpha[1], j) * rat_pow(alpha[2], k);
  }
};

std::vector<ExponentTriple> degree_monomials(int d) {
  std::vector<ExponentTriple> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Groups and bounds.

std::string group_text(const GroupSpec& g) {
  switch (g.kind) {
    case GroupKind::Gamma0:
      return "Gamma0";
    case GroupKind::Gamma1:
      return "Gamma1";
    case GroupKind::Custom:
      return "custom:" + std::to_string(g.custom_index);
  }
  return "?";
}

GroupSpec parse_group_spec(const std::string& text) {
  if (text == "g0" || text == "Gamma0") return GroupSpec::gamma0();
  if (text == "g1" || text == "Gamma1") return GroupSpec::gamma1();
  const std::string prefix = "custom:";
  if (text.rfind(prefix, 0) == 0) {
    long k = 0;
    try {
      k = std::stol(text.substr(prefix.size()));
    } catch (const std::exception&) {
      fail("invalid-parameter", "malformed group index in " + text);
    }
    if (k <= 0) fail("invalid-parameter", "custom group index must be positive");
    return GroupSpec::custom(k);
  }
  fail("invalid-parameter",
       "unknown group " + text + " (expected g0, g1, or custom:<k>)");
}

long group_index(long N, const GroupSpec& group) {
  if (N < 1) fail("invalid-parameter", "level must be at least 1");
  if (group.kind == GroupKind::Custom) {
    if (group.custom_index <= 0)
      fail("invalid-parameter", "custom group index must be positive");
    return group.custom_index;
  }
  long idx = group.kind == GroupKind::Gamma0 ? N : N * N;
  for (const auto& [p, alpha] : factorize(N)) {
    (void)alpha;
    if (group.kind == GroupKind::Gamma0)
      idx = idx / p * (p + 1);
    else
      idx = idx / (p * p) * (p * p - 1);
  }
  return idx;
}

SturmBound sturm_bound(long N, int weight, const GroupSpec& group) {
  if (weight < 2 || weight % 2 != 0)
    fail("invalid-parameter", "weight must be an even integer >= 2");
  SturmBound b;
  b.level = N;
  b.group = group;
  b.index = group_index(N, group);
  b.weight = weight;
  const long prod = static_cast<long>(weight) * b.index;
  b.bound = static_cast<int>((prod + 11) / 12);
  return b;
}

// ---------------------------------------------------------------------------
// HomogeneousPolynomial.

HomogeneousPolynomial::HomogeneousPolynomial(int degree, TermMap terms)
    : degree_(degree), terms_(std::move(terms)) {
  if (degree < 0) fail("invalid-parameter", "polynomial degree must be >= 0");
  for (auto it = terms_.begin(); it != terms_.end();) {
    const auto& [e, c] = *it;
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree)
      fail("invalid-parameter",
           "exponent triple does not match the stated degree");
    it = (c == 0) ? terms_.erase(it) : std::next(it);
  }
}

Int HomogeneousPolynomial::coefficient(int i, int j, int k) const {
  const auto it = terms_.find({i, j, k});
  return it == terms_.end() ? Int(0) : it->second;
}

HomogeneousPolynomial HomogeneousPolynomial::normalized() const {
  if (terms_.empty()) return *this;
  Int g(0);
  for (const auto& [e, c] : terms_) g = gcd(g, c);
  if (terms_.begin()->second < 0) g = -g;
  TermMap out;
  for (const auto& [e, c] : terms_) out.emplace(e, c / g);
  return HomogeneousPolynomial(degree_, std::move(out));
}

bool HomogeneousPolynomial::is_normalized() const {
  if (terms_.empty()) return true;
  Int g(0);
  for (const auto& [e, c] : terms_) g = gcd(g, c);
  return g == 1 && terms_.begin()->second > 0;
}

HomogeneousPolynomial HomogeneousPolynomial::partial(int var) const {
  if (var < 0 || var > 2)
    fail("invalid-parameter", "variable index must be 0, 1, or 2");
  if (degree_ == 0)
    fail("invalid-parameter", "cannot differentiate a degree-0 polynomial");
  TermMap out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExponentTriple f = e;
    f[var] -= 1;
    out.emplace(f, c * e[var]);
  }
  return HomogeneousPolynomial(degree_ - 1, std::move(out));
}

std::string HomogeneousPolynomial::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    const Int mag = neg ? Int(-c) : c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    const char* names = "XYZ";
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str();
      out += mono;
    }
  }
  return out;
}

HomogeneousPolynomial parse_homogeneous_polynomial(const std::string& text) {
  struct Term {
    Int coeff;
    ExponentTriple e;
  };
  std::vector<Term> parsed;
  size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  if (pos == text.size())
    fail("invalid-parameter", "empty polynomial text");
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    skip_ws();
    if (!first || text[pos] == '+' || text[pos] == '-') {
      if (pos >= text.size() || (text[pos] != '+' && text[pos] != '-'))
        fail("invalid-parameter",
             "expected '+' or '-' between polynomial terms near position " +
                 std::to_string(pos));
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    }
    first = false;
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      digits += text[pos++];
    Int coeff = digits.empty() ? Int(1) : Int(digits);
    coeff *= sign;
    ExponentTriple e = {0, 0, 0};
    bool saw_var = false;
    while (pos < text.size() &&
           (text[pos] == 'X' || text[pos] == 'Y' || text[pos] == 'Z')) {
      const int v = text[pos] == 'X' ? 0 : text[pos] == 'Y' ? 1 : 2;
      ++pos;
      int exp = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::string ed;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ed += text[pos++];
        if (ed.empty())
          fail("invalid-parameter", "missing exponent after '^'");
        exp = std::stoi(ed);
      }
      e[static_cast<size_t>(v)] += exp;
      saw_var = true;
    }
    if (digits.empty() && !saw_var)
      fail("invalid-parameter",
           "malformed polynomial term near position " + std::to_string(pos));
    parsed.push_back({std::move(coeff), e});
    skip_ws();
  }
  if (parsed.empty()) fail("invalid-parameter", "empty polynomial text");
  const int degree = parsed.front().e[0] + parsed.front().e[1] + parsed.front().e[2];
  HomogeneousPolynomial::TermMap terms;
  for (const Term& t : parsed) {
    if (t.e[0] + t.e[1] + t.e[2] != degree)
      fail("invalid-parameter",
           "polynomial is not homogeneous: mixed total degrees");
    auto [it, inserted] = terms.emplace(t.e, t.coeff);
    if (!inserted)
      fail("invalid-parameter", "repeated monomial in polynomial text");
  }
  return HomogeneousPolynomial(degree, std::move(terms));
}

RatSeries evaluate_form(const HomogeneousPolynomial& F, const SeriesTriple& t,
                        int cap) {
  if (F.is_zero())
    fail("zero-polynomial", "cannot evaluate the zero polynomial as a q-series");
  if (F.degree() < 1)
    fail("invalid-parameter",
         "a degree-0 polynomial does not evaluate to a q-series");
  MonomialEngine engine(t, cap);
  std::optional<std::vector<Rat>> acc;
  int window = 0;
  for (const auto& [e, c] : F.terms()) {
    const IntSeries m = engine.monomial(e[0], e[1], e[2]);
    const Rat factor = Rat(c) * engine.alpha_power(e[0], e[1], e[2]);
    if (!acc) {
      window = m.trunc_order();
      acc.emplace(static_cast<size_t>(window), Rat(0));
    } else {
      window = std::min(window, m.trunc_order());
      acc->resize(static_cast<size_t>(window));
    }
    for (int n = 1; n <= window; ++n)
      (*acc)[static_cast<size_t>(n - 1)] += factor * Rat(m.at(n));
  }
  return RatSeries(std::move(*acc));
}

// ---------------------------------------------------------------------------
// Basis change.

Mat3 Mat3::identity() { return diagonal(Rat(1), Rat(1), Rat(1)); }

Mat3 Mat3::diagonal(const Rat& x, const Rat& y, const Rat& z) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.a[i][j] = Rat(0);
  m.a[0][0] = x;
  m.a[1][1] = y;
  m.a[2][2] = z;
  return m;
}

Rat Mat3::det() const {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

BasisChange change_of_basis(const HomogeneousPolynomial& F, const Mat3& M) {
  if (F.is_zero())
    fail("zero-polynomial", "cannot change basis of the zero polynomial");
  if (M.det() == 0)
    fail("singular-matrix", "basis-change matrix is singular");

  using RatMap = std::map<ExponentTriple, Rat, MonomialOrderDesc>;
  // Powers of the three substituted linear forms, built on demand.
  std::vector<RatMap> lin_pow[3];
  for (int v = 0; v < 3; ++v) {
    RatMap lin;
    for (int j = 0; j < 3; ++j) {
      if (M.a[v][j] == 0) continue;
      ExponentTriple e = {0, 0, 0};
      e[static_cast<size_t>(j)] = 1;
      lin.emplace(e, M.a[v][j]);
    }
    lin_pow[v].push_back(std::move(lin));
  }
  const auto multiply = [](const RatMap& x, const RatMap& y) {
    RatMap out;
    for (const auto& [ex, cx] : x)
      for (const auto& [ey, cy] : y) {
        const ExponentTriple e = {ex[0] + ey[0], ex[1] + ey[1], ex[2] + ey[2]};
        out[e] += cx * cy;
      }
    return out;
  };
  const auto power = [&](int v, int e) -> const RatMap& {
    while (static_cast<int>(lin_pow[v].size()) < e)
      lin_pow[v].push_back(
          multiply(lin_pow[v].back(), lin_pow[v].front()));
    return lin_pow[v][static_cast<size_t>(e - 1)];
  };

  RatMap raw;
  for (const auto& [e, c] : F.terms()) {
    RatMap term;
    term.emplace(ExponentTriple{0, 0, 0}, Rat(c));
    for (int v = 0; v < 3; ++v)
      if (e[static_cast<size_t>(v)] > 0)
        term = multiply(term, power(v, e[static_cast<size_t>(v)]));
    for (const auto& [me, mc] : term) raw[me] += mc;
  }
  for (auto it = raw.begin(); it != raw.end();)
    it = (it->second == 0) ? raw.erase(it) : std::next(it);
  if (raw.empty())
    fail("singular-matrix",
         "substitution annihilated the polynomial unexpectedly");

  Int den_lcm(1);
  for (const auto& [e, c] : raw) den_lcm = lcm(den_lcm, denominator(c));
  Int g(0);
  for (const auto& [e, c] : raw)
    g = gcd(g, Int(numerator(c) * (den_lcm / denominator(c))));
  if (raw.begin()->second < 0) g = -g;
  const Rat scalar(g, den_lcm);
  HomogeneousPolynomial::TermMap terms;
  for (const auto& [e, c] : raw) {
    const Rat v = c / scalar;
    terms.emplace(e, numerator(v));
  }
  return {HomogeneousPolynomial(F.degree(), std::move(terms)), scalar};
}

// ---------------------------------------------------------------------------
// Relation search.

std::string relation_class_text(RelationClass c) {
  switch (c) {
    case RelationClass::None:
      return "none";
    case RelationClass::UniqueQuartic:
      return "unique-quartic";
    case RelationClass::HyperellipticSignature:
      return "hyperelliptic-signature";
    case RelationClass::OverDetermined:
      return "over-determined";
  }
  return "?";
}

RelationResult find_relation(const SeriesTriple& t, int d,
                             const SturmBound& bound) {
  if (d < 2) fail("invalid-parameter", "relation degree must be at least 2");
  const int B = bound.bound;
  const RatSeries* in[3] = {&t.s1, &t.s2, &t.s3};
  for (int i = 0; i < 3; ++i) {
    if (in[i]->trunc_order() < B + d)
      fail("insufficient-truncation",
           "series " + std::to_string(i + 1) + " is reliable to " +
               std::to_string(in[i]->trunc_order()) +
               " but the degree-" + std::to_string(d) +
               " search at bound " + std::to_string(B) + " requires " +
               std::to_string(B + d));
    if (!vanishing_order(*in[i]))
      fail("degenerate-input",
           "series " + std::to_string(i + 1) +
               " vanishes through its whole known window");
  }

  const std::vector<ExponentTriple> monos = degree_monomials(d);
  const int m = static_cast<int>(monos.size());

  MonomialEngine engine(t, B);
  std::vector<IntSeries> cols;
  cols.reserve(static_cast<size_t>(m));
  for (const ExponentTriple& e : monos) {
    IntSeries s = engine.monomial(e[0], e[1], e[2]);
    if (s.trunc_order() < B)
      fail("insufficient-truncation",
           "monomial series fell short of the bound window");
    cols.push_back(std::move(s));
  }

  // Streamed Gauss-Jordan over the exponent rows of the monomial matrix.
  struct PivotRow {
    int pivot;
    std::vector<Rat> v;  // length m, v[pivot] = 1, zero at other pivots
  };
  std::vector<PivotRow> rows;
  for (int n = 1; n <= B && static_cast<int>(rows.size()) < m; ++n) {
    std::vector<Rat> r(static_cast<size_t>(m));
    bool nonzero = false;
    for (int c = 0; c < m; ++c) {
      r[static_cast<size_t>(c)] = Rat(cols[static_cast<size_t>(c)].at(n));
      nonzero = nonzero || r[static_cast<size_t>(c)] != 0;
    }
    if (!nonzero) continue;
    for (const PivotRow& p : rows) {
      const Rat f = r[static_cast<size_t>(p.pivot)];
      if (f == 0) continue;
      for (int c = 0; c < m; ++c)
        r[static_cast<size_t>(c)] -= f * p.v[static_cast<size_t>(c)];
    }
    int piv = -1;
    for (int c = 0; c < m; ++c)
      if (r[static_cast<size_t>(c)] != 0) {
        piv = c;
        break;
      }
    if (piv < 0) continue;
    const Rat inv = Rat(1) / r[static_cast<size_t>(piv)];
    for (int c = 0; c < m; ++c) r[static_cast<size_t>(c)] *= inv;
    for (PivotRow& p : rows) {
      const Rat f = p.v[static_cast<size_t>(piv)];
      if (f == 0) continue;
      for (int c = 0; c < m; ++c)
        p.v[static_cast<size_t>(c)] -= f * r[static_cast<size_t>(c)];
    }
    rows.push_back({piv, std::move(r)});
  }

  const int rank = static_cast<int>(rows.size());
  RelationResult result;
  result.degree = d;
  result.bound = B;
  result.dimension = m - rank;

  std::vector<bool> is_pivot(static_cast<size_t>(m), false);
  for (const PivotRow& p : rows) is_pivot[static_cast<size_t>(p.pivot)] = true;
  for (int f = 0; f < m; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    // Kernel vector: free column = 1, pivot columns read off the rows; then
    // undo the content-clearing rescale of the input series.
    std::vector<Rat> v(static_cast<size_t>(m), Rat(0));
    v[static_cast<size_t>(f)] = Rat(1);
    for (const PivotRow& p : rows)
      v[static_cast<size_t>(p.pivot)] = -p.v[static_cast<size_t>(f)];
    Int den_lcm(1);
    for (int c = 0; c < m; ++c) {
      const ExponentTriple& e = monos[static_cast<size_t>(c)];
      v[static_cast<size_t>(c)] /= engine.alpha_power(e[0], e[1], e[2]);
      den_lcm = lcm(den_lcm, denominator(v[static_cast<size_t>(c)]));
    }
    HomogeneousPolynomial::TermMap terms;
    for (int c = 0; c < m; ++c) {
      const Rat scaled = v[static_cast<size_t>(c)] * Rat(den_lcm);
      if (scaled != 0) terms.emplace(monos[static_cast<size_t>(c)], numerator(scaled));
    }
    result.relations.push_back(
        HomogeneousPolynomial(d, std::move(terms)).normalized());
  }

  if (result.dimension == 0)
    result.classification = RelationClass::None;
  else if (d == 4 && result.dimension == 1)
    result.classification = RelationClass::UniqueQuartic;
  else if (d == 4)
    result.classification = RelationClass::HyperellipticSignature;
  else
    result.classification = RelationClass::OverDetermined;
  return result;
}

RelationResult find_relation(const NormalizedBasis& basis, int d,
                             const SturmBound& bound) {
  return find_relation(SeriesTriple::from_basis(basis), d, bound);
}

bool certify_vanishing(const HomogeneousPolynomial& F, const SeriesTriple& t,
                       const SturmBound& bound) {
  const int B = bound.bound;
  const RatSeries value = evaluate_form(F, t, B);
  if (value.trunc_order() < B)
    fail("insufficient-truncation",
         "evaluation is reliable only to " +
             std::to_string(value.trunc_order()) +
             " but the certificate requires " + std::to_string(B));
  for (int n = 1; n <= B; ++n)
    if (value.at(n) != 0) return false;
  return true;
}

bool certify_vanishing(const HomogeneousPolynomial& F,
                       const NormalizedBasis& basis, const SturmBound& bound) {
  return certify_vanishing(F, SeriesTriple::from_basis(basis), bound);
}

std::string psi_status_text(PsiStatus s) {
  switch (s) {
    case PsiStatus::Constant:
      return "constant";
    case PsiStatus::NonConstant:
      return "non-constant";
    case PsiStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

PsiCertificate psi_certificate(const HomogeneousPolynomial& F,
                               const SeriesTriple& t,
                               const SturmBound& bound_w6) {
  const HomogeneousPolynomial FY = F.partial(1);
  if (FY.is_zero())
    fail("degenerate-denominator",
         "dF/dY is the zero polynomial; the ratio is undefined");
  const int B = bound_w6.bound;
  const RatSeries den = evaluate_form(FY, t, B);
  const RatSeries num =
      sub(mul(theta(t.s1), t.s3, B), mul(t.s1, theta(t.s3), B));
  const int W = std::min(num.trunc_order(), den.trunc_order());

  const VanishingOrder ord_den = vanishing_order(den);
  if (!ord_den)
    fail("degenerate-denominator",
         "dF/dY vanishes on the whole known window; the ratio is undefined "
         "to available order");
  const VanishingOrder ord_num = vanishing_order(num);
  PsiCertificate cert;
  if (!ord_num) {
    cert.c = Rat(0);
    cert.verified_to = W;
    cert.status = PsiStatus::Inconclusive;
    return cert;
  }
  cert.c = num.at(*ord_num) / den.at(*ord_den);
  const int limit = std::min(W, B);
  for (int n = 1; n <= limit; ++n) {
    if (num.at(n) - cert.c * den.at(n) != 0) {
      cert.status = PsiStatus::NonConstant;
      cert.first_mismatch = n;
      cert.verified_to = n - 1;
      return cert;
    }
  }
  cert.verified_to = limit;
  cert.status = W >= B ? PsiStatus::Constant : PsiStatus::Inconclusive;
  return cert;
}

PsiCertificate psi_certificate(const HomogeneousPolynomial& F,
                               const NormalizedBasis& basis,
                               const SturmBound& bound_w6) {
  return psi_certificate(F, SeriesTriple::from_basis(basis), bound_w6);
}

}  // namespace modcurve
