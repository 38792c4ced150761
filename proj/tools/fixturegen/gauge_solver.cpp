#include "gauge_solver.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

#include "quadcell.hpp"

namespace fixturegen {

using modcurve::fail;
using modcurve::HomogeneousPolynomial;
using modcurve::Int;
using modcurve::Rat;
using modcurve::RatSeries;

namespace {

std::vector<long> coprime_primes(long level, int count) {
  if (level < 1) fail("invalid-parameter", "level must be positive");
  std::vector<long> out;
  for (long p = 2; static_cast<int>(out.size()) < count; ++p) {
    bool prime = p >= 2;
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (prime && level % p != 0) out.push_back(p);
  }
  return out;
}

// Cubic monomial exponents (p,q,r), p+q+r == 3.
struct Mono3 {
  int p, q, r;
  bool operator<(const Mono3& o) const {
    if (p != o.p) return p < o.p;
    if (q != o.q) return q < o.q;
    return r < o.r;
  }
};

class BasisSolver {
public:
  BasisSolver(const HomogeneousPolynomial& F, int nu, int M, long level,
              bool diamond_is_identity, const std::vector<CoefficientPin>& pins,
              int prime_count)
      : F_(F), nu_(nu), M_(M), primes_(coprime_primes(level, prime_count)),
        unknown_diamond_(!diamond_is_identity),
        top_(M + 2 * nu + static_cast<int>(primes_.front()) + 16),
        pins_(pins) {
    validate();
    c_ = Rat(1) / Rat(F_.coefficient(3, 0, 1));
    make_symbols();
    collect_partials();
  }

  GaugeBasis run() {
    for (const CoefficientPin& pin : pins_) {
      PolyCell eq = val(pin.i, pin.n);
      eq -= PolyCell::constant(pin.value);
      elim_.add_equation(std::move(eq), "pin h" + std::to_string(pin.i) + "[" +
                                            std::to_string(pin.n) + "]");
    }
    for (int m = 3; m <= top_; ++m) {
      if (m >= 3) push_wronskian(1, 2, /*dvar=*/2, m, "I1");
      if (m >= nu_ + 1) push_wronskian(3, 1, /*dvar=*/1, m, "I3");
      if (m >= nu_ + 2) push_wronskian(2, 3, /*dvar=*/0, m, "I2");
      for (size_t k = 0; k < primes_.size(); ++k)
        if (m % static_cast<int>(primes_[k]) == 0)
          push_hecke(k, m / static_cast<int>(primes_[k]));
    }
    return harvest();
  }

private:
  void validate() {
    if (F_.degree() != 4) fail("invalid-parameter", "relation must be quartic");
    if (nu_ < 3 || nu_ > 5)
      fail("invalid-parameter", "h3 order must be 3, 4 or 5");
    if (M_ < nu_ + 1) fail("invalid-parameter", "coefficient window too small");
    if (F_.coefficient(4, 0, 0) != 0 || F_.coefficient(3, 1, 0) != 0)
      fail("invalid-parameter",
           "relation is not in curve normal form (X^4 or X^3 Y present)");
    const Int a301 = F_.coefficient(3, 0, 1);
    if (a301 <= 0)
      fail("invalid-parameter", "X^3 Z coefficient must be positive");
    // Contact structure of the tangent line Z = 0 at (1:0:0): the first
    // nonzero pure-(X,Y) slot sits at Y-degree nu-1 and is forced to -a301.
    for (int j = 2; j < nu_ - 1; ++j)
      if (F_.coefficient(4 - j, j, 0) != 0)
        fail("invalid-parameter",
             "tangent contact contradicts the requested h3 order");
    if (F_.coefficient(5 - nu_, nu_ - 1, 0) != -a301)
      fail("invalid-parameter",
           "gauge identity fails: [X^(5-nu) Y^(nu-1)] must equal -[X^3 Z]");
  }

  void make_symbols() {
    // Hecke-stability matrix symbols come first so the eliminator prefers to
    // pivot on series coefficients (newer symbols) instead.
    cmats_.resize(primes_.size());
    dmats_.resize(primes_.size());
    for (size_t k = 0; k < primes_.size(); ++k) {
      const std::string ps = std::to_string(primes_[k]);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          cmats_[k][static_cast<size_t>(i)][static_cast<size_t>(j)] =
              elim_.fresh("c" + ps + "_" + std::to_string(i + 1) +
                          std::to_string(j + 1));
          if (unknown_diamond_)
            dmats_[k][static_cast<size_t>(i)][static_cast<size_t>(j)] =
                elim_.fresh("d" + ps + "_" + std::to_string(i + 1) +
                            std::to_string(j + 1));
        }
    }
    for (int i = 0; i < 3; ++i)
      h_[static_cast<size_t>(i)].assign(static_cast<size_t>(top_) + 1,
                                        PolyCell::constant(Rat(0)));
    // Pivot pattern: h1 = q + ..., h2 = q^2 + ..., h3 = q^nu + ...,
    // reduced so each row vanishes at the later pivots.
    for (int n = 1; n <= top_; ++n) {
      for (int i = 1; i <= 3; ++i) {
        PolyCell cell;
        const bool known =
            (i == 1 && (n == 1 || n == 2 || n == nu_)) ||
            (i == 2 && (n == 1 || n == 2 || n == nu_)) ||
            (i == 3 && n <= nu_);
        if (known) {
          Rat v(0);
          if (i == 1 && n == 1) v = 1;
          if (i == 2 && n == 2) v = 1;
          if (i == 3 && n == nu_) v = 1;
          cell = PolyCell::constant(v);
        } else {
          cell = PolyCell::symbol(elim_.fresh(
              "h" + std::to_string(i) + "[" + std::to_string(n) + "]"));
        }
        h_[static_cast<size_t>(i - 1)][static_cast<size_t>(n)] = cell;
      }
    }
  }

  void collect_partials() {
    for (int var = 0; var < 3; ++var) {
      const HomogeneousPolynomial d = F_.partial(var);
      for (const auto& [e, coeff] : d.terms())
        partials_[static_cast<size_t>(var)].emplace_back(
            Mono3{e[0], e[1], e[2]}, Rat(coeff));
    }
  }

  const PolyCell& val(int i, int n) {
    PolyCell& cell = h_[static_cast<size_t>(i - 1)][static_cast<size_t>(n)];
    elim_.reduce(cell);
    return cell;
  }

  // h_i * h_j as a series of cells, extended and re-reduced on demand.
  const PolyCell& pair_at(int i, int j, int m) {
    if (i > j) std::swap(i, j);
    auto& vec = pairs_[{i, j}];
    if (vec.empty()) vec.assign(2, PolyCell::constant(Rat(0)));  // orders 0,1
    while (static_cast<int>(vec.size()) <= m) {
      const int s = static_cast<int>(vec.size());
      PolyCell acc;
      for (int a = 1; a < s; ++a) acc += mul(val(i, a), val(j, s - a));
      vec.push_back(std::move(acc));
    }
    PolyCell& cell = vec[static_cast<size_t>(m)];
    elim_.reduce(cell);
    return cell;
  }

  // Monomial h1^p h2^q h3^r (p+q+r == 3) as a series of cells.
  const PolyCell& mono_at(const Mono3& mono, int m) {
    auto& vec = monos_[mono];
    if (vec.empty()) vec.assign(3, PolyCell::constant(Rat(0)));  // orders 0..2
    // Split off one linear factor: the largest remaining variable index.
    int lin_var, pi = mono.p, qi = mono.q, ri = mono.r;
    if (ri > 0) {
      lin_var = 3;
      --ri;
    } else if (qi > 0) {
      lin_var = 2;
      --qi;
    } else {
      lin_var = 1;
      --pi;
    }
    int u = 0, v = 0;
    int rest[3] = {pi, qi, ri};
    for (int i = 1; i <= 3; ++i)
      while (rest[i - 1]-- > 0) (u == 0 ? u : v) = i;
    while (static_cast<int>(vec.size()) <= m) {
      const int s = static_cast<int>(vec.size());
      PolyCell acc;
      for (int a = 1; a <= s - 2; ++a)
        acc += mul(val(lin_var, a), pair_at(u, v, s - a));
      vec.push_back(std::move(acc));
    }
    PolyCell& cell = vec[static_cast<size_t>(m)];
    elim_.reduce(cell);
    return cell;
  }

  // [dF/dvar](h1,h2,h3) at order m;  var: 0 = X, 1 = Y, 2 = Z.
  PolyCell partial_at(int var, int m) {
    PolyCell acc;
    for (const auto& [mono, coeff] : partials_[static_cast<size_t>(var)]) {
      PolyCell t = mono_at(mono, m);
      t.scale_by(coeff);
      acc += t;
    }
    return acc;
  }

  // h_i th(h_j) - h_j th(h_i) at order m.
  PolyCell wronskian_at(int i, int j, int m) {
    PolyCell acc;
    for (int a = 1; a < m; ++a) {
      PolyCell t = mul(val(i, a), val(j, m - a));
      t.scale_by(Rat(m - 2 * a));
      acc += t;
    }
    return acc;
  }

  void push_wronskian(int i, int j, int dvar, int m, const char* tag) {
    PolyCell eq = wronskian_at(i, j, m);
    PolyCell d = partial_at(dvar, m);
    d.scale_by(c_);
    eq -= d;
    elim_.add_equation(std::move(eq),
                       std::string(tag) + "@" + std::to_string(m));
  }

  // Index-p Hecke stability at coefficient n, for primes p not dividing the
  // level (degeneracy shifts commute with T_p exactly then, so the solved
  // span really is stable):
  //   h_i[p n] + p (D h_i)[n/p] = (C h_i)[n]
  // with C the unknown T_p matrix and D the diamond matrix (identity for a
  // trivial character, unknown otherwise).
  void push_hecke(size_t k, int n) {
    const int p = static_cast<int>(primes_[k]);
    for (int i = 1; i <= 3; ++i) {
      PolyCell eq = val(i, p * n);
      if (n % p == 0) {
        if (unknown_diamond_) {
          for (int j = 1; j <= 3; ++j) {
            PolyCell t =
                mul(PolyCell::symbol(dmats_[k][static_cast<size_t>(i - 1)]
                                             [static_cast<size_t>(j - 1)]),
                    val(j, n / p));
            t.scale_by(Rat(p));
            eq += t;
          }
        } else {
          PolyCell t = val(i, n / p);
          t.scale_by(Rat(p));
          eq += t;
        }
      }
      for (int j = 1; j <= 3; ++j)
        eq -= mul(PolyCell::symbol(cmats_[k][static_cast<size_t>(i - 1)]
                                           [static_cast<size_t>(j - 1)]),
                  val(j, n));
      elim_.add_equation(std::move(eq), "H" + std::to_string(p) + "." +
                                            std::to_string(i) + "@" +
                                            std::to_string(n));
    }
  }

  GaugeBasis harvest() {
    std::array<std::vector<Rat>, 3> out;
    for (int i = 1; i <= 3; ++i) {
      out[static_cast<size_t>(i - 1)].reserve(static_cast<size_t>(M_));
      for (int n = 1; n <= M_; ++n) {
        const PolyCell& cell = val(i, n);
        if (!cell.is_constant()) {
          std::string parked;
          for (const auto& s : elim_.parked_summaries(4)) parked += " " + s;
          fail("solver-stalled",
               "h" + std::to_string(i) + "[" + std::to_string(n) +
                   "] unresolved after all equations; parked:" +
                   (parked.empty() ? " none" : parked));
        }
        out[static_cast<size_t>(i - 1)].push_back(cell.constant_value());
      }
    }
    return GaugeBasis{RatSeries(std::move(out[0])), RatSeries(std::move(out[1])),
                      RatSeries(std::move(out[2]))};
  }

  const HomogeneousPolynomial& F_;
  int nu_, M_;
  long p_;  // smallest prime coprime to the level
  bool unknown_diamond_;
  int top_;
  Rat c_;
  std::vector<CoefficientPin> pins_;
  std::array<std::array<Sym, 3>, 3> cmat_{};
  std::array<std::array<Sym, 3>, 3> dmat_{};
  Eliminator elim_;
  std::array<std::vector<PolyCell>, 3> h_;  // value cells, 1-based index
  std::array<std::vector<std::pair<Mono3, Rat>>, 3> partials_;
  std::map<std::pair<int, int>, std::vector<PolyCell>> pairs_;
  std::map<Mono3, std::vector<PolyCell>> monos_;
};

}  // namespace

GaugeBasis solve_normal_form_basis(const HomogeneousPolynomial& F, int nu,
                                   int M, long level, bool diamond_is_identity,
                                   const std::vector<CoefficientPin>& pins) {
  return BasisSolver(F, nu, M, level, diamond_is_identity, pins).run();
}

}  // namespace fixturegen
