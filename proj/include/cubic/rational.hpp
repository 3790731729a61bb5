#ifndef CUBIC_RATIONAL_HPP
#define CUBIC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cubic/errors.hpp"

namespace cubic {

// Exact rational scalar. mpq_class keeps the canonical form we rely on
// everywhere: gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "p/q" or "-p/q". Whitespace is not tolerated; these strings
// come from machine-written files.
Rational parse_rational(const std::string& text);

// "p/q" with q > 0 and gcd(p, q) = 1, or just "p" when q = 1.
std::string rational_to_string(const Rational& q);

std::string integer_to_string(const Integer& z);
Integer parse_integer(const std::string& text);

// Continued-fraction rounding of a double to a rational with denominator
// bounded by max_den.
Rational rationalize(double x, unsigned long max_den);

}  // namespace cubic

#endif
