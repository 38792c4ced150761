// Sparse polynomial cells over solver symbols, plus an incremental
// eliminator.  Equations arrive in dependency order; linear ones install a
// solved form for their newest symbol, nonlinear ones are parked and retried
// after every installation (substituting solved forms never raises degree,
// so parked equations eventually collapse to linear or to 0 = 0).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modcurve/rational.hpp"

namespace fixturegen {

using modcurve::Rat;
using Sym = std::uint32_t;

// A monomial is a sorted (ascending) multiset of symbols; empty means 1.
using Mono = std::vector<Sym>;

class PolyCell {
public:
  PolyCell() = default;
  static PolyCell constant(Rat v);
  static PolyCell symbol(Sym s);

  bool is_zero() const { return t.empty(); }
  bool is_constant() const;
  int degree() const;  // 0 for constants (including zero)
  const Rat& constant_value() const;  // requires is_constant()
  Rat constant_term() const;          // coefficient of the empty monomial
  Sym top_symbol() const;             // largest symbol present; requires degree()>=1
  Rat coeff_of(Sym s) const;          // coefficient of the degree-1 monomial {s}

  PolyCell& operator+=(const PolyCell& o);
  PolyCell& operator-=(const PolyCell& o);
  void scale_by(const Rat& k);
  void add_term(Mono m, Rat c);  // m must be sorted

  std::map<Mono, Rat> t;
};

PolyCell mul(const PolyCell& a, const PolyCell& b);

class Eliminator {
public:
  Sym fresh(const std::string& name);
  const std::string& name(Sym s) const { return names_[s]; }

  // Substitute all solved symbols in the cell (to a fixpoint).
  void reduce(PolyCell& cell) const;

  // Assert cell == 0.  Drains the internal queue: installs pivots for linear
  // equations, parks nonlinear ones, throws on an inconsistency.
  void add_equation(PolyCell eq, std::string what);

  std::optional<Rat> value(Sym s) const;
  size_t parked_count() const { return parked_.size(); }
  std::vector<std::string> parked_summaries(size_t cap) const;

private:
  struct Pending {
    PolyCell cell;
    std::string what;
  };
  void drain();
  bool resolve_univariate();
  bool cross_eliminate();
  bool combine_parked();
  void install(Sym pivot, PolyCell form, const std::string& what);

  std::vector<std::string> names_;
  // solved_[s] is a polynomial in symbols strictly older than s.
  mutable std::map<Sym, PolyCell> solved_;
  std::vector<Pending> queue_;
  std::vector<Pending> parked_;
  std::set<std::string> eliminated_pairs_;
};

}  // namespace fixturegen
