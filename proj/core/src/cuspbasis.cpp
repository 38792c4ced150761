#include "modcurve/cuspbasis.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "modcurve/errors.hpp"

namespace modcurve {

namespace {

// Rescale so the first nonzero known coefficient becomes 1; errors when the
// whole known window vanishes (the series may still be nonzero further out).
RatSeries monicized(const RatSeries& s, Rat* leading_out) {
  const VanishingOrder ord = vanishing_order(s);
  if (!ord)
    fail("insufficient-truncation",
         "series vanishes through its whole known window; extend the "
         "coefficient data");
  const Rat lead = s.at(*ord);
  if (leading_out) *leading_out = lead;
  return scale(s, Rat(1) / lead);
}

void check_pivot(const RatSeries& s, int pivot, const char* name) {
  const VanishingOrder ord = vanishing_order(s);
  if (!ord || *ord != pivot || !(s.at(pivot) == Rat(1)))
    fail("degenerate-input", std::string(name) +
                                 " failed its pivot normalization (expected "
                                 "leading term q^" +
                                 std::to_string(pivot) + ")");
}

NormalizedBasis finish(CaseTag tag, RatSeries h1, RatSeries h2, RatSeries h3,
                       BasisDerivation derivation, const BasisOptions& options) {
  derivation.raw = {h1, h2, h3};
  if (options.echelon_reduce) {
    std::vector<RatSeries> rows = reduced_echelon({h1, h2, h3});
    if (rows.size() != 3)
      fail("degenerate-input",
           "basis series are linearly dependent on the known window");
    h1 = rows[0];
    h2 = rows[1];
    h3 = rows[2];
  }
  check_pivot(h1, 1, "h1");
  check_pivot(h2, 2, "h2");
  const VanishingOrder ord3 = vanishing_order(h3);
  if (ord3 && *ord3 < 3)
    fail("degenerate-input", "h3 fails to vanish to order 3");
  NormalizedBasis basis{std::move(h1), std::move(h2), std::move(h3), tag, ord3,
                        std::move(derivation)};
  return basis;
}

}  // namespace

std::string case_tag_text(CaseTag t) {
  switch (t) {
    case CaseTag::A:
      return "A";
    case CaseTag::AE:
      return "AE";
    case CaseTag::EEE:
      return "EEE";
  }
  return "?";
}

RatSeries trace_series(const EigenformPackage& pkg, const NFElem& beta) {
  std::vector<Rat> c;
  c.reserve(static_cast<size_t>(pkg.trunc_order()));
  for (int n = 1; n <= pkg.trunc_order(); ++n)
    c.push_back((beta * pkg.a(n)).trace());
  return RatSeries(std::move(c));
}

RatSeries coordinate_series(const EigenformPackage& pkg, int index) {
  std::vector<Rat> c;
  c.reserve(static_cast<size_t>(pkg.trunc_order()));
  for (int n = 1; n <= pkg.trunc_order(); ++n) c.push_back(pkg.a(n).coord(index));
  return RatSeries(std::move(c));
}

std::vector<RatSeries> reduced_echelon(const std::vector<RatSeries>& rows_in) {
  if (rows_in.empty()) return {};
  int m = rows_in.front().trunc_order();
  for (const RatSeries& r : rows_in) m = std::min(m, r.trunc_order());
  std::vector<std::vector<Rat>> rows;
  rows.reserve(rows_in.size());
  for (const RatSeries& r : rows_in)
    rows.emplace_back(r.coeffs().begin(), r.coeffs().begin() + m);

  size_t rank = 0;
  for (int col = 0; col < m && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][static_cast<size_t>(col)] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const Rat inv = Rat(1) / rows[rank][static_cast<size_t>(col)];
    for (int j = col; j < m; ++j) rows[rank][static_cast<size_t>(j)] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Rat f = rows[r][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j = col; j < m; ++j)
        rows[r][static_cast<size_t>(j)] -= f * rows[rank][static_cast<size_t>(j)];
    }
    ++rank;
  }
  std::vector<RatSeries> out;
  out.reserve(rank);
  for (size_t r = 0; r < rank; ++r) out.emplace_back(std::move(rows[r]));
  return out;
}

std::vector<RatSeries> integral_span_basis(
    const std::vector<EigenformPackage>& pkgs) {
  if (pkgs.empty())
    fail("invalid-parameter", "need at least one coefficient package");
  std::vector<RatSeries> rows;
  for (const EigenformPackage& pkg : pkgs) {
    NFElem power = pkg.field()->from_rational(1);
    for (int j = 0; j < pkg.degree(); ++j) {
      rows.push_back(trace_series(pkg, power));
      if (j + 1 < pkg.degree()) power = power * pkg.field()->generator();
    }
  }
  return reduced_echelon(rows);
}

NormalizedBasis build_case_A(const EigenformPackage& f, BasisOptions options) {
  if (f.degree() != 3)
    fail("wrong-case", "splitting shape A needs a cubic coefficient field, got degree " +
                           std::to_string(f.degree()));
  if (f.nebentypus_order() != 1)
    fail("wrong-case", "splitting shape A needs trivial nebentypus");
  const NFElem a2 = f.a(2);
  if (a2.is_rational())
    fail("hyperelliptic-obstruction",
         "a_2 lies in a proper subfield, so the trace construction degenerates "
         "(hyperelliptic signature)");

  // p = characteristic polynomial of multiplication by a_2 (monic cubic).
  const std::vector<Rat> p = a2.char_poly();
  const Rat a = p[1], b = p[2], c = p[3];
  const Rat disc_p = poly_disc(p);
  const Rat disc_dp = poly_disc({Rat(3), Rat(2) * a, b});
  if (disc_p == 0)
    fail("degenerate-input", "characteristic polynomial of a_2 is not separable");
  if (disc_dp == 0)
    fail("degenerate-input",
         "derivative of the characteristic polynomial of a_2 has a double "
         "root; the coefficient field is not totally real");

  const std::vector<Rat> a3_coords = coords_in_power_basis(f.a(3), a2);
  const Rat gamma3 = a3_coords[2];

  const NFElem one = f.field()->from_rational(1);
  const RatSeries g1 = scale(trace_series(f, one), Rat(1) / 3);
  const RatSeries g2 = scale(trace_series(f, a2), Rat(1) / 3);
  const RatSeries g3 = scale(trace_series(f, a2 * a2), Rat(1) / 3);

  const RatSeries h1 = g1;
  const RatSeries h2 = scale(add(g2, scale(g1, a / 3)), Rat(18) / disc_dp);
  const Rat c1 = (a * a - Rat(2) * b) / 3;
  const Rat c2 = (Rat(2) * a * a * a - Rat(7) * a * b + Rat(9) * c) / 9;
  RatSeries h3 = add(sub(g3, scale(h1, c1)), scale(h2, c2));

  BasisDerivation der;
  der.a = a;
  der.b = b;
  der.c = c;
  der.disc_p = disc_p;
  der.disc_dp = disc_dp;
  der.gamma3 = gamma3;
  der.A_const = Rat(2) * disc_p / (Rat(3) * disc_dp);
  h3 = monicized(h3, &der.h3_leading);
  return finish(CaseTag::A, h1, h2, std::move(h3), std::move(der), options);
}

NormalizedBasis build_case_AE(const EigenformPackage& f,
                              const EigenformPackage& g,
                              BasisOptions options) {
  if (f.degree() != 2 || g.degree() != 1)
    fail("wrong-case",
         "splitting shape AE needs a quadratic package plus a rational one "
         "(got degrees " +
             std::to_string(f.degree()) + " and " + std::to_string(g.degree()) +
             ")");
  if (g.nebentypus_order() != 1)
    fail("wrong-case",
         "the rational factor in shape AE must have trivial nebentypus");
  const long ord = f.nebentypus_order();
  if (ord == 6)
    fail("excluded-order",
         "nebentypus order 6 is excluded: no basis of this shape exists");
  if (ord != 1 && ord != 2 && ord != 3 && ord != 4)
    fail("invalid-parameter",
         "nebentypus order " + std::to_string(ord) +
             " cannot occur for a quadratic coefficient field");

  const std::vector<Int>& pc = f.field()->poly().coefficients();
  const Rat B(pc[1]), C(pc[2]);

  const int M = std::min(f.trunc_order(), g.trunc_order());
  const RatSeries half_trace =
      truncated(scale(trace_series(f, f.field()->from_rational(1)), Rat(1) / 2), M);
  const RatSeries vcoord = truncated(coordinate_series(f, 1), M);
  const RatSeries gser = truncated(coordinate_series(g, 0), M);
  if (M < 2)
    fail("insufficient-truncation", "need coefficients at least through q^2");

  BasisDerivation der;
  der.A2 = half_trace.at(2);
  der.B2 = vcoord.at(2) / 2;  // a_2(f) = A2 + B2*sqrt(d)
  der.c2 = gser.at(2);
  der.d = B * B - Rat(4) * C;

  const RatSeries h1 = half_trace;
  RatSeries h2 = RatSeries::zero(M, Rat(0));
  RatSeries h3 = RatSeries::zero(M, Rat(0));
  if (!(vcoord.at(2) == 0)) {
    der.branch_B2_nonzero = true;
    h2 = scale(vcoord, Rat(1) / vcoord.at(2));
    h3 = sub(sub(gser, h1), scale(h2, der.c2 - der.A2));
    h3 = monicized(h3, &der.h3_leading);
  } else {
    der.branch_B2_nonzero = false;
    if (der.c2 == der.A2)
      fail("hyperelliptic-obstruction",
           "a_2 values coincide with B2 = 0; the construction degenerates "
           "(hyperelliptic signature)");
    h2 = scale(sub(gser, h1), Rat(1) / (der.c2 - der.A2));
    if (!vanishing_order(vcoord))
      fail("degenerate-input",
           "all irrational-part coefficients vanish on the known window; the "
           "package is not genuinely quadratic at this truncation");
    h3 = monicized(vcoord, &der.h3_leading);
  }
  return finish(CaseTag::AE, h1, std::move(h2), std::move(h3), std::move(der),
                options);
}

NormalizedBasis build_case_EEE(const EigenformPackage& f1,
                               const EigenformPackage& f2,
                               const EigenformPackage& f3,
                               BasisOptions options) {
  const EigenformPackage* pkgs[3] = {&f1, &f2, &f3};
  for (const EigenformPackage* p : pkgs) {
    if (p->degree() != 1)
      fail("wrong-case",
           "splitting shape EEE needs three rational packages (package " +
               p->label().text() + " has degree " +
               std::to_string(p->degree()) + ")");
    if (p->nebentypus_order() != 1)
      fail("wrong-case",
           "splitting shape EEE needs trivial nebentypus on every factor");
  }
  std::sort(pkgs, pkgs + 3,
            [](const EigenformPackage* x, const EigenformPackage* y) {
              return x->label() < y->label();
            });
  const Rat a2[3] = {pkgs[0]->a(2).coord(0), pkgs[1]->a(2).coord(0),
                     pkgs[2]->a(2).coord(0)};
  // First pair (in label order) with distinct a_2 supplies (h1, h2); the
  // remaining package supplies h3.
  int i = -1, j = -1, k = -1;
  const int pair_order[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pair_order) {
    if (!(a2[pr[0]] == a2[pr[1]])) {
      i = pr[0];
      j = pr[1];
      k = 3 - i - j;
      break;
    }
  }
  if (i < 0)
    fail("hyperelliptic-obstruction",
         "all three a_2 values coincide; the construction degenerates "
         "(hyperelliptic signature)");

  const int M = std::min({pkgs[0]->trunc_order(), pkgs[1]->trunc_order(),
                          pkgs[2]->trunc_order()});
  const RatSeries s1 = truncated(coordinate_series(*pkgs[i], 0), M);
  const RatSeries s2 = truncated(coordinate_series(*pkgs[j], 0), M);
  const RatSeries s3 = truncated(coordinate_series(*pkgs[k], 0), M);

  BasisDerivation der;
  der.ordering = {pkgs[i]->label().text(), pkgs[j]->label().text(),
                  pkgs[k]->label().text()};
  der.a2_first = a2[i];
  der.a2_second = a2[j];
  der.a2_third = a2[k];

  const RatSeries h1 = s1;
  const RatSeries h2 = scale(sub(s1, s2), Rat(1) / (a2[i] - a2[j]));
  RatSeries h3 = sub(sub(s3, h1), scale(h2, a2[k] - a2[i]));
  h3 = monicized(h3, &der.h3_leading);
  return finish(CaseTag::EEE, h1, h2, std::move(h3), std::move(der), options);
}

NormalizedBasis build_basis(const std::vector<EigenformPackage>& factors,
                            BasisOptions options) {
  std::vector<int> degs;
  for (const EigenformPackage& p : factors) degs.push_back(p.degree());
  std::sort(degs.begin(), degs.end(), std::greater<int>());
  if (degs == std::vector<int>{3}) return build_case_A(factors[0], options);
  if (degs == std::vector<int>{2, 1}) {
    const bool first_quadratic = factors[0].degree() == 2;
    return build_case_AE(factors[first_quadratic ? 0 : 1],
                         factors[first_quadratic ? 1 : 0], options);
  }
  if (degs == std::vector<int>{1, 1, 1})
    return build_case_EEE(factors[0], factors[1], factors[2], options);
  fail("wrong-case",
       "factor field degrees must sum to 3 as one of the shapes 3 / 2+1 / "
       "1+1+1");
}

MonomialProfile monomial_order_profile(int nu1, int nu2, int nu3, int degree) {
  if (degree < 1) fail("invalid-parameter", "profile degree must be positive");
  if (nu1 < 1 || nu2 < 1 || nu3 < 1)
    fail("invalid-parameter", "vanishing orders must be at least 1");
  MonomialProfile out;
  std::set<long> seen;
  for (int i = degree; i >= 0; --i)
    for (int j = degree - i; j >= 0; --j) {
      const int k = degree - i - j;
      const long order = static_cast<long>(i) * nu1 +
                         static_cast<long>(j) * nu2 +
                         static_cast<long>(k) * nu3;
      out.entries.push_back({i, j, k, order});
      seen.insert(order);
    }
  out.all_distinct = seen.size() == out.entries.size();
  return out;
}

MonomialProfile monomial_order_profile(const NormalizedBasis& basis,
                                       int degree) {
  if (!basis.ord_h3)
    fail("insufficient-truncation",
         "vanishing order of h3 is beyond the known window; extend the "
         "coefficient data before profiling");
  return monomial_order_profile(1, 2, *basis.ord_h3, degree);
}

}  // namespace modcurve
