#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace loopmot {

// Exact rational scalar. mpq_class keeps the canonical reduced form
// (coprime numerator/denominator, positive denominator) after every
// arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "a" or "a/b" in base 10. Rejects malformed input and zero
// denominators.
Rational parse_rational(const std::string& text);

// "a" when the denominator is 1, "a/b" otherwise. Round-trips bit-exactly
// through parse_rational.
std::string rational_string(const Rational& q);

int sign(const Rational& q);

double to_double(const Rational& q);

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

}  // namespace loopmot
