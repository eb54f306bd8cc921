#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace jk {

// GMP keeps mpq_class canonical (lowest terms, positive denominator, 0 == 0/1)
// as long as every constructed value is passed through canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (decimal integers). Throws ParseError on bad input or q == 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace jk
