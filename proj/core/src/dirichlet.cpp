#include "modcurve/dirichlet.hpp"

#include <numeric>

#include "modcurve/errors.hpp"

namespace modcurve {

namespace {

long mod_pow(long base, long exp, long mod) {
  long result = 1 % mod;
  long b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = static_cast<long>((__int128)result * b % mod);
    b = static_cast<long>((__int128)b * b % mod);
    exp >>= 1;
  }
  return result;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Order of n in (Z/m)^* by exhaustive multiplication (desk scale).
long multiplicative_order(long n, long m, long phi) {
  long cur = n % m;
  for (long k = 1; k <= phi; ++k) {
    if (cur == 1) return k;
    cur = static_cast<long>((__int128)cur * n % m);
  }
  fail("invalid-parameter", "element not invertible in multiplicative group");
}

// Discrete log of n base g in (Z/m)^*, exhaustive.
long discrete_log(long n, long g, long m, long phi) {
  long cur = 1;
  n = ((n % m) + m) % m;
  for (long k = 0; k < phi; ++k) {
    if (cur == n) return k;
    cur = static_cast<long>((__int128)cur * g % m);
  }
  fail("undefined-value", "no discrete logarithm: element outside the group");
}

}  // namespace

std::vector<std::pair<long, int>> factorize(long n) {
  if (n <= 0) fail("invalid-parameter", "factorize needs a positive integer");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    out.emplace_back(p, a);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long prime_power_phi(long p, int alpha) {
  return ipow(p, alpha - 1) * (p - 1);
}

long smallest_primitive_root(long p, int alpha) {
  const long m = ipow(p, alpha);
  const long phi = prime_power_phi(p, alpha);
  for (long g = 2; g < m; ++g) {
    if (g % p == 0) continue;
    if (multiplicative_order(g, m, phi) == phi) return g;
  }
  fail("invalid-parameter", "no primitive root found (even modulus?)");
}

DirichletCharacterCode DirichletCharacterCode::trivial(long modulus) {
  return DirichletCharacterCode(
      modulus, std::vector<long>(static_cast<size_t>(slot_count(modulus)), 0));
}

int DirichletCharacterCode::slot_count(long modulus) {
  int count = 0;
  for (const auto& [p, a] : factorize(modulus)) {
    if (p == 2)
      count += (a == 1) ? 0 : (a == 2 ? 1 : 2);
    else
      count += 1;
  }
  return count;
}

DirichletCharacterCode::DirichletCharacterCode(long modulus,
                                               const std::vector<long>& slots)
    : modulus_(modulus) {
  if (modulus < 1) fail("invalid-parameter", "modulus must be positive");
  if (static_cast<int>(slots.size()) != slot_count(modulus))
    fail("label-syntax",
         "character exponent list for modulus " + std::to_string(modulus) +
             " needs " + std::to_string(slot_count(modulus)) +
             " entries, got " + std::to_string(slots.size()));
  size_t idx = 0;
  for (const auto& [p, a] : factorize(modulus)) {
    CharComponent c;
    c.prime = p;
    c.alpha = a;
    if (p == 2) {
      if (a == 1) {
        // trivial component, no slot
      } else if (a == 2) {
        c.e1 = slots[idx++];
        if (c.e1 < 0 || c.e1 >= 2)
          fail("label-syntax", "exponent at -1 must lie in [0,2)");
      } else {
        c.e1 = slots[idx++];
        c.e2 = slots[idx++];
        if (c.e1 < 0 || c.e1 >= 2)
          fail("label-syntax", "exponent at -1 must lie in [0,2)");
        const long half = ipow(2, a - 2);
        if (c.e2 < 0 || c.e2 >= half)
          fail("label-syntax", "exponent at 5 must lie in [0,2^{a-2})");
      }
    } else {
      c.e1 = slots[idx++];
      const long phi = prime_power_phi(p, a);
      if (c.e1 < 0 || c.e1 >= phi)
        fail("label-syntax", "exponent for " + std::to_string(p) + "^" +
                                 std::to_string(a) + " must lie in [0," +
                                 std::to_string(phi) + ")");
    }
    comps_.push_back(c);
  }
}

bool DirichletCharacterCode::is_trivial() const {
  for (const auto& c : comps_)
    if (c.e1 != 0 || c.e2 != 0) return false;
  return true;
}

long DirichletCharacterCode::order() const {
  long ord = 1;
  for (const auto& c : comps_) {
    if (c.prime == 2) {
      if (c.alpha >= 2) ord = std::lcm(ord, 2L / std::gcd(c.e1, 2L));
      if (c.alpha >= 3) {
        const long half = ipow(2, c.alpha - 2);
        ord = std::lcm(ord, half / std::gcd(c.e2, half));
      }
    } else {
      const long phi = prime_power_phi(c.prime, c.alpha);
      ord = std::lcm(ord, phi / std::gcd(c.e1, phi));
    }
  }
  return ord;
}

Rat DirichletCharacterCode::value_exponent(long n) const {
  n = ((n % modulus_) + modulus_) % modulus_;
  if (modulus_ > 1 && std::gcd(n, modulus_) != 1)
    fail("undefined-value", "character undefined at " + std::to_string(n) +
                                " (not coprime to " + std::to_string(modulus_) +
                                ")");
  Rat r = 0;
  for (const auto& c : comps_) {
    const long m = ipow(c.prime, c.alpha);
    const long res = n % m;
    if (c.prime == 2) {
      if (c.alpha == 1) continue;
      if (c.alpha == 2) {
        if (res == 3) r += Rat(c.e1, 2);
        continue;
      }
      // res = (-1)^s 5^t mod 2^alpha
      const long half = ipow(2, c.alpha - 2);
      bool found = false;
      for (long s = 0; s < 2 && !found; ++s) {
        long cur = s ? m - 1 : 1;
        for (long t = 0; t < half; ++t) {
          if (cur == res) {
            r += Rat(c.e1 * s, 2) + Rat(c.e2 * t, half);
            found = true;
            break;
          }
          cur = static_cast<long>((__int128)cur * 5 % m);
        }
      }
      if (!found)
        fail("undefined-value", "residue outside the (-1,5) decomposition");
      continue;
    }
    const long phi = prime_power_phi(c.prime, c.alpha);
    const long g = smallest_primitive_root(c.prime, c.alpha);
    const long d = discrete_log(res, g, m, phi);
    r += Rat(c.e1 * d, phi);
  }
  // reduce mod 1
  Rat frac = r - Rat(numerator(r) / denominator(r));
  if (frac < 0) frac += 1;
  return frac;
}

std::vector<long> DirichletCharacterCode::slots() const {
  std::vector<long> out;
  for (const auto& c : comps_) {
    if (c.prime == 2) {
      if (c.alpha == 1) continue;
      out.push_back(c.e1);
      if (c.alpha >= 3) out.push_back(c.e2);
    } else {
      out.push_back(c.e1);
    }
  }
  return out;
}

std::string DirichletCharacterCode::subscript_text() const {
  std::string out;
  for (const long e : slots()) {
    if (!out.empty()) out += ",";
    out += std::to_string(e);
  }
  return out;
}

}  // namespace modcurve
