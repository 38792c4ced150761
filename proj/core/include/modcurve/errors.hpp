// Error type carrying a stable machine-readable code alongside the message.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace modcurve {

// Codes used across the library (stable identifiers for callers/tests):
//   ring-mismatch, mixed-field, invalid-parameter, insufficient-truncation,
//   wrong-case, hyperelliptic-obstruction, excluded-order, degenerate-input,
//   degenerate-denominator, schema, label-syntax, multiplicativity,
//   hecke-recursion, character-embedding, reducible-polynomial,
//   undefined-value, no-expected-value, zero-polynomial, singular-matrix,
//   fixture-missing, mismatch, io
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code,
                              const std::string& message) {
  throw Error(code, message);
}

}  // namespace modcurve
