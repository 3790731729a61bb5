#ifndef CUBIC_INTFACTOR_HPP
#define CUBIC_INTFACTOR_HPP

#include <map>
#include <vector>

#include "cubic/rational.hpp"

namespace cubic {

// Factorization of |n| into prime powers. Small primes by trial division,
// the rest by Brent-cycle Pollard rho with GMP probable-prime tests.
// Throws FactorizationLimit if a composite cofactor resists splitting.
std::map<Integer, unsigned> factorize(Integer n);

// All positive divisors of |n|, unsorted. Throws FactorizationLimit when
// the divisor count would exceed the cap.
std::vector<Integer> positive_divisors(const Integer& n, std::size_t cap = 1u << 20);

}  // namespace cubic

#endif
