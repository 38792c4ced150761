// Dirichlet-character codes: a character mod N encoded by one exponent slot
// per odd prime power (value at the smallest primitive root) and, for the
// 2-part, no slot for 2^1, one slot (value at -1) for 2^2, and a slot pair
// (values at -1 and 5) for 2^a with a >= 3.  Slots are ordered 2-part first,
// then odd primes increasing.
#pragma once

#include <string>
#include <vector>

#include "modcurve/rational.hpp"

namespace modcurve {

struct CharComponent {
  long prime = 0;
  int alpha = 0;   // prime^alpha exactly divides the modulus
  long e1 = 0;     // odd p / 2^2: exponent at the generator; 2^a>=8: at -1
  long e2 = 0;     // 2^a>=8 only: exponent at 5
};

class DirichletCharacterCode {
public:
  // Trivial character of the given modulus.
  static DirichletCharacterCode trivial(long modulus);

  // From the canonical slot list (see header comment for slot layout).
  DirichletCharacterCode(long modulus, const std::vector<long>& slots);

  long modulus() const { return modulus_; }
  const std::vector<CharComponent>& components() const { return comps_; }
  bool is_trivial() const;
  long order() const;

  // Number of canonical subscript slots for this modulus.
  static int slot_count(long modulus);

  // Exponent r in [0,1) with value e^{2*pi*i*r} at n; requires gcd(n,N)=1
  // (undefined-value error otherwise).
  Rat value_exponent(long n) const;

  std::vector<long> slots() const;
  std::string subscript_text() const;  // "0,0,2"

  bool operator==(const DirichletCharacterCode& o) const {
    return modulus_ == o.modulus_ && slots() == o.slots();
  }

private:
  long modulus_ = 1;
  std::vector<CharComponent> comps_;
};

// Smallest generator of (Z/p^alpha)^* for odd p (primitive root).
long smallest_primitive_root(long p, int alpha);

// Euler phi of p^alpha.
long prime_power_phi(long p, int alpha);

// Factorization of n > 0 as (prime, exponent) pairs, primes increasing.
std::vector<std::pair<long, int>> factorize(long n);

}  // namespace modcurve
