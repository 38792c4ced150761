#include "quadcell.hpp"

#include <algorithm>
#include <utility>

#include "modcurve/errors.hpp"

namespace fixturegen {

using modcurve::fail;

PolyCell PolyCell::constant(Rat v) {
  PolyCell c;
  if (v != 0) c.t.emplace(Mono{}, std::move(v));
  return c;
}

PolyCell PolyCell::symbol(Sym s) {
  PolyCell c;
  c.t.emplace(Mono{s}, Rat(1));
  return c;
}

bool PolyCell::is_constant() const {
  return t.empty() || (t.size() == 1 && t.begin()->first.empty());
}

int PolyCell::degree() const {
  size_t d = 0;
  for (const auto& [m, c] : t) d = std::max(d, m.size());
  return static_cast<int>(d);
}

const Rat& PolyCell::constant_value() const {
  static const Rat zero(0);
  if (t.empty()) return zero;
  return t.begin()->second;
}

Rat PolyCell::constant_term() const {
  auto it = t.find(Mono{});
  return it == t.end() ? Rat(0) : it->second;
}

Sym PolyCell::top_symbol() const {
  Sym best = 0;
  bool seen = false;
  for (const auto& [m, c] : t)
    for (Sym s : m)
      if (!seen || s > best) {
        best = s;
        seen = true;
      }
  if (!seen) fail("internal", "top_symbol of a constant cell");
  return best;
}

Rat PolyCell::coeff_of(Sym s) const {
  auto it = t.find(Mono{s});
  return it == t.end() ? Rat(0) : it->second;
}

PolyCell& PolyCell::operator+=(const PolyCell& o) {
  for (const auto& [m, c] : o.t) add_term(m, c);
  return *this;
}

PolyCell& PolyCell::operator-=(const PolyCell& o) {
  for (const auto& [m, c] : o.t) add_term(m, -c);
  return *this;
}

void PolyCell::scale_by(const Rat& k) {
  if (k == 0) {
    t.clear();
    return;
  }
  for (auto& [m, c] : t) c *= k;
}

void PolyCell::add_term(Mono m, Rat c) {
  if (c == 0) return;
  auto [it, inserted] = t.emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

PolyCell mul(const PolyCell& a, const PolyCell& b) {
  PolyCell out;
  for (const auto& [ma, ca] : a.t)
    for (const auto& [mb, cb] : b.t) {
      if (ma.size() + mb.size() > 6)
        fail("nonlinear-blowup",
             "product of cells would exceed total degree 6");
      Mono m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(),
                 std::back_inserter(m));
      out.add_term(std::move(m), ca * cb);
    }
  return out;
}

Sym Eliminator::fresh(const std::string& name) {
  names_.push_back(name);
  return static_cast<Sym>(names_.size() - 1);
}

void Eliminator::reduce(PolyCell& cell) const {
  for (;;) {
    // Find a monomial mentioning a solved symbol.
    const Mono* hit = nullptr;
    Sym hs = 0;
    for (const auto& [m, c] : cell.t) {
      for (Sym s : m)
        if (solved_.count(s)) {
          hit = &m;
          hs = s;
          break;
        }
      if (hit) break;
    }
    if (!hit) return;
    Mono m = *hit;
    const Rat c = cell.t.at(m);
    cell.t.erase(m);
    // Compact the solved form first: its own symbols are strictly older than
    // hs, so this recursion is well founded.
    PolyCell& form = solved_.at(hs);
    reduce(form);
    Mono rest = m;
    rest.erase(std::find(rest.begin(), rest.end(), hs));
    PolyCell restCell;
    restCell.t.emplace(std::move(rest), c);
    cell += mul(restCell, form);
  }
}

void Eliminator::add_equation(PolyCell eq, std::string what) {
  queue_.push_back(Pending{std::move(eq), std::move(what)});
  drain();
}

void Eliminator::drain() {
  for (;;) {
    while (!queue_.empty()) {
      Pending p = std::move(queue_.back());
      queue_.pop_back();
      reduce(p.cell);
      if (p.cell.is_zero()) continue;
      if (p.cell.is_constant())
        fail("inconsistent",
             "equation " + p.what + " reduced to " +
                 modcurve::format_rational(p.cell.constant_value()) + " = 0");
      if (p.cell.degree() >= 2) {
        parked_.push_back(std::move(p));
        continue;
      }
      const Sym pivot = p.cell.top_symbol();
      const Rat k = p.cell.coeff_of(pivot);
      p.cell.t.erase(Mono{pivot});
      p.cell.scale_by(Rat(-1) / k);
      install(pivot, std::move(p.cell), p.what);
    }
    if (resolve_univariate()) continue;
    if (combine_parked()) continue;
    if (!cross_eliminate()) return;
  }
}

// A symbol appearing linearly in two parked rows  A1 s + B1  and  A2 s + B2
// (A, B free of s) is eliminated by the cross-multiplication A2 B1 - A1 B2.
// This is a directed resultant step: combine_parked only takes constant-
// coefficient combinations and cannot multiply rows by polynomials.
bool Eliminator::cross_eliminate() {
  // Only small rows over a handful of symbols are worth cross-multiplying;
  // anything bigger produces unmanageable products without new information.
  constexpr size_t kTermCap = 60;
  constexpr size_t kSupportCap = 4;
  constexpr size_t kOutTermCap = 800;
  std::map<Sym, std::vector<size_t>> linear_rows;
  for (size_t idx = 0; idx < parked_.size(); ++idx) {
    PolyCell& cell = parked_[idx].cell;
    reduce(cell);
    if (cell.degree() < 2 || cell.t.size() > kTermCap) continue;
    std::map<Sym, size_t> maxdeg;
    for (const auto& [m, c] : cell.t) {
      size_t run = 0;
      for (size_t k = 0; k < m.size(); ++k) {
        ++run;
        if (k + 1 == m.size() || m[k + 1] != m[k]) {
          auto [it, fresh_entry] = maxdeg.emplace(m[k], run);
          if (!fresh_entry && run > it->second) it->second = run;
          run = 0;
        }
      }
    }
    if (maxdeg.size() > kSupportCap) continue;
    for (const auto& [s, d] : maxdeg)
      if (d == 1) linear_rows[s].push_back(idx);
  }
  bool progress = false;
  for (const auto& [s, rows] : linear_rows) {
    if (rows.size() < 2) continue;
    // Pair the smallest row with each of the others.
    size_t base = rows[0];
    for (size_t r : rows)
      if (parked_[r].cell.t.size() < parked_[base].cell.t.size()) base = r;
    for (size_t r : rows) {
      if (r == base) continue;
      const std::string key = parked_[base].what + "|" + parked_[r].what +
                              "|" + names_[s];
      if (!eliminated_pairs_.insert(key).second) continue;
      // Split each row as  A s + B  with A, B free of s.
      auto split = [&](const PolyCell& cell, PolyCell& A, PolyCell& B) {
        for (const auto& [m, c] : cell.t) {
          auto it = std::find(m.begin(), m.end(), s);
          if (it == m.end()) {
            B.add_term(m, c);
          } else {
            Mono rest = m;
            rest.erase(std::find(rest.begin(), rest.end(), s));
            A.add_term(std::move(rest), c);
          }
        }
      };
      PolyCell A1, B1, A2, B2;
      split(parked_[base].cell, A1, B1);
      split(parked_[r].cell, A2, B2);
      if (A2.degree() + B1.degree() > 6 || A1.degree() + B2.degree() > 6)
        continue;
      PolyCell out = mul(A2, B1);
      out -= mul(A1, B2);
      if (out.is_zero() || out.t.size() > kOutTermCap) continue;
      queue_.push_back(Pending{std::move(out), "elim " + names_[s] + "(" +
                                                   parked_[base].what + "," +
                                                   parked_[r].what + ")"});
      progress = true;
    }
  }
  return progress;
}

namespace {

// Dense univariate polynomials over Q, index = degree.
using UniPoly = std::vector<Rat>;

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rat k = a.back() / b.back();
    const size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= k * b[i];
    uni_trim(a);
  }
  return a;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    const Rat lead = a.back();
    for (Rat& c : a) c /= lead;
  }
  return a;
}

UniPoly uni_derivative(const UniPoly& p) {
  UniPoly out;
  for (size_t i = 1; i < p.size(); ++i) out.push_back(Rat(long(i)) * p[i]);
  return out;
}

// Exact quotient (valid when b divides a).
UniPoly uni_quot(UniPoly a, const UniPoly& b) {
  UniPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rat k = a.back() / b.back();
    q[a.size() - b.size()] = k;
    const size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= k * b[i];
    uni_trim(a);
  }
  return q;
}

}  // namespace

// Some constraints are visible only nonlinearly: a parked equation can reduce
// to a polynomial in one unresolved symbol.  The gcd of all such polynomials
// for a symbol has exactly the values consistent with every equation as
// roots; when that pins a single rational value, assert it.
bool Eliminator::resolve_univariate() {
  std::map<Sym, UniPoly> gcds;
  for (auto& p : parked_) {
    reduce(p.cell);
    if (p.cell.degree() < 2) continue;  // combine_parked re-queues these
    Sym s = 0;
    bool seen = false, single = true;
    for (const auto& [m, c] : p.cell.t) {
      for (Sym x : m) {
        if (!seen) {
          s = x;
          seen = true;
        } else if (x != s) {
          single = false;
          break;
        }
      }
      if (!single) break;
    }
    if (!seen || !single) continue;
    UniPoly poly(static_cast<size_t>(p.cell.degree()) + 1, Rat(0));
    for (const auto& [m, c] : p.cell.t) poly[m.size()] = c;
    auto it = gcds.find(s);
    if (it == gcds.end())
      gcds.emplace(s, std::move(poly));
    else
      it->second = uni_gcd(std::move(it->second), std::move(poly));
  }
  bool progress = false;
  for (auto& [s, g] : gcds) {
    uni_trim(g);
    if (g.empty()) continue;  // identically satisfiable, no information
    if (g.size() == 1)
      fail("inconsistent", "no value of " + names_[s] +
                               " satisfies the parked equations");
    // Strip repeated roots so a double root still reads as linear.
    if (g.size() > 2) {
      const UniPoly sq = uni_gcd(g, uni_derivative(g));
      if (sq.size() > 1) g = uni_quot(std::move(g), sq);
    }
    // Degree >= 2 after squarefree reduction means several values are still
    // consistent; leave the symbol alone and wait for more equations.
    if (g.size() != 2) continue;
    PolyCell eq;
    eq.add_term(Mono{s}, Rat(1));
    eq.add_term(Mono{}, g[0] / g[1]);
    queue_.push_back(Pending{std::move(eq), "endgame " + names_[s]});
    progress = true;
  }
  return progress;
}

// Eliminate the nonlinear monomials across the parked equations by exact
// Gaussian elimination; any row whose nonlinear part cancels entirely is a
// genuine linear consequence and goes back on the queue.
bool Eliminator::combine_parked() {
  if (parked_.size() < 2) return false;
  std::vector<Pending> pool;
  for (auto& p : parked_) {
    reduce(p.cell);
    if (p.cell.is_zero()) continue;
    if (p.cell.degree() <= 1)
      queue_.push_back(std::move(p));
    else
      pool.push_back(std::move(p));
  }
  parked_.clear();
  if (!queue_.empty()) {
    parked_ = std::move(pool);
    return true;
  }
  // Collect the nonlinear monomials, highest degree first.
  std::vector<Mono> monos;
  for (const auto& p : pool)
    for (const auto& [m, c] : p.cell.t)
      if (m.size() >= 2) monos.push_back(m);
  std::sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
  });
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  std::vector<Pending> kept;
  for (const Mono& mu : monos) {
    size_t piv = pool.size();
    for (size_t i = 0; i < pool.size(); ++i)
      if (pool[i].cell.t.count(mu)) {
        piv = i;
        break;
      }
    if (piv == pool.size()) continue;
    const Rat pk = pool[piv].cell.t.at(mu);
    for (size_t i = 0; i < pool.size(); ++i) {
      if (i == piv) continue;
      auto it = pool[i].cell.t.find(mu);
      if (it == pool[i].cell.t.end()) continue;
      PolyCell scaled = pool[piv].cell;
      scaled.scale_by(-it->second / pk);
      pool[i].cell += scaled;
    }
    kept.push_back(std::move(pool[piv]));
    pool.erase(pool.begin() + static_cast<long>(piv));
  }
  bool progress = false;
  for (auto& p : pool) {
    if (p.cell.is_zero()) continue;
    if (p.cell.is_constant())
      fail("inconsistent",
           "combined equation " + p.what + " reduced to " +
               modcurve::format_rational(p.cell.constant_value()) + " = 0");
    queue_.push_back(std::move(p));
    progress = true;
  }
  parked_ = std::move(kept);
  return progress;
}

void Eliminator::install(Sym pivot, PolyCell form, const std::string& what) {
  if (solved_.count(pivot))
    fail("internal", "pivot " + names_[pivot] + " installed twice (" + what + ")");
  solved_.emplace(pivot, std::move(form));
  // Retry everything that was parked: the new pivot may linearize it.
  for (auto& p : parked_) queue_.push_back(std::move(p));
  parked_.clear();
}

std::optional<Rat> Eliminator::value(Sym s) const {
  PolyCell cell = PolyCell::symbol(s);
  reduce(cell);
  if (!cell.is_constant()) return std::nullopt;
  return cell.constant_value();
}

std::vector<std::string> Eliminator::parked_summaries(size_t cap) const {
  std::vector<std::string> out;
  for (const auto& p : parked_) {
    if (out.size() >= cap) break;
    out.push_back(p.what + " (degree " + std::to_string(p.cell.degree()) +
                  ", " + std::to_string(p.cell.t.size()) + " terms)");
  }
  return out;
}

}  // namespace fixturegen
