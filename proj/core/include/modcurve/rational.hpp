// Exact big-integer and rational arithmetic used throughout the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "modcurve/errors.hpp"

namespace modcurve {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) {
  return boost::multiprecision::numerator(r);
}
inline Int denominator(const Rat& r) {
  return boost::multiprecision::denominator(r);
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Int lcm(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}

// Parses "7", "-12", "3/4", "-3/4". Whitespace is not accepted.
inline Rat parse_rational(std::string_view text) {
  if (text.empty()) fail("schema", "empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rat(Int(std::string(text)));
    }
    Int num{std::string(text.substr(0, slash))};
    Int den{std::string(text.substr(slash + 1))};
    if (den == 0) fail("schema", "zero denominator in rational literal");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    fail("schema", "malformed rational literal: " + std::string(text));
  }
}

// Canonical "p/q" (q > 1) or "p" form.
inline std::string format_rational(const Rat& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += "/";
    out += denominator(r).str();
  }
  return out;
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace modcurve
