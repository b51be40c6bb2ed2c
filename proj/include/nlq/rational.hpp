#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic substrate.
 *
 * Every coefficient in this library is an exact rational number; there is
 * no floating-point mode anywhere. Rationals are GMP-backed and always kept
 * canonical (gcd-reduced, positive denominator), so equality is structural.
 *
 * The string form is "num" for integers and "num/den" otherwise, which is
 * also the canonical JSON encoding used throughout.
 */

#include <cstdint>
#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace nlq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// "num" or "num/den", canonical form.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "num" or "num/den" (base 10). Throws on malformed input or zero
/// denominator.
inline Rational rational_from_string(const std::string& s) {
  mpq_class r;
  if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw Error("malformed rational: '" + s + "'");
  if (r.get_den() == 0) throw Error("zero denominator in rational: '" + s + "'");
  r.canonicalize();
  return r;
}

/// num/den in canonical form. The raw two-argument mpq_class constructor
/// skips canonicalization; this one never does.
inline Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

/// Throws if r is not an integer.
inline Integer to_integer(const Rational& r) {
  if (!is_integral(r)) throw Error("rational " + to_string(r) + " is not an integer");
  return r.get_num();
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace nlq
